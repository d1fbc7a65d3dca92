#pragma once

/**
 * @file algebra_structure.hpp
 * @brief Nilradical, primitive idempotents, components and the unit decomposition.
 *
 * Idempotents are found on an integral model: the reduced quotient is given a
 * Z_p-order whose reduction mod p has the same idempotents as the algebra
 * (a p-maximal order, reached by repeatedly adjoining the multiplier ring of
 * the p-radical). Idempotents of the finite algebra O/pO are split off inside
 * its Frobenius-fixed subalgebra and then Newton-lifted, e <- 3e^2 - 2e^3.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "simpson/algebra.hpp"
#include "simpson/fp.hpp"

namespace simpson {

/// Basis of the nilradical: the radical of the trace form (x, y) -> Tr(L_xy).
inline std::vector<AlgElement> nilradical(const Algebra& a, std::int64_t slack = kDefaultSlack) {
    const std::size_t m = a->dim();
    std::vector<PadicScalar> traces(m);
    for (std::size_t k = 0; k < m; ++k) {
        const Matrix l = a->left_multiplication(a->basis_vector(k));
        PadicScalar t = PadicScalar::zero(a->context());
        for (std::size_t i = 0; i < m; ++i) t += l(i, i);
        traces[k] = t;
    }
    Matrix form(a->context(), m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            PadicScalar acc = PadicScalar::zero(a->context());
            for (std::size_t k = 0; k < m; ++k) acc += a->constant(i, j, k) * traces[k];
            form(i, j) = acc;
        }
    std::vector<AlgElement> out;
    for (auto& v : kernel(form, slack)) out.emplace_back(a, std::move(v));
    return out;
}

/// A / nilradical with a chosen complement basis (first element 1).
struct ReducedQuotient {
    Algebra reduced;
    std::vector<AlgElement> nil_basis;
    Matrix lift;     ///< dim(A) x r: reduced coordinates -> coordinates in A
    Matrix project;  ///< r x dim(A): coordinates in A -> reduced coordinates

    AlgElement to_reduced(const AlgElement& x) const {
        std::vector<PadicScalar> c(reduced->dim(), PadicScalar::zero(reduced->context()));
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < x.dim(); ++j) c[i] += project(i, j) * x[j];
        return {reduced, std::move(c)};
    }

    AlgElement from_reduced(const Algebra& a, const std::vector<PadicScalar>& y) const {
        std::vector<PadicScalar> c(a->dim(), PadicScalar::zero(a->context()));
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j) c[i] += lift(i, j) * y[j];
        return {a, std::move(c)};
    }
};

inline ReducedQuotient reduced_quotient(const Algebra& a, std::int64_t slack = kDefaultSlack) {
    const Context& ctx = a->context();
    const std::size_t m = a->dim();
    ReducedQuotient q;
    q.nil_basis = nilradical(a, slack);
    std::vector<std::vector<PadicScalar>> comp{a->unit_vector()};
    auto stacked_rank = [&](const std::vector<std::vector<PadicScalar>>& extra) {
        Matrix w(ctx, m, q.nil_basis.size() + extra.size());
        for (std::size_t j = 0; j < q.nil_basis.size(); ++j)
            for (std::size_t i = 0; i < m; ++i) w(i, j) = q.nil_basis[j][i];
        for (std::size_t j = 0; j < extra.size(); ++j)
            for (std::size_t i = 0; i < m; ++i) w(i, q.nil_basis.size() + j) = extra[j][i];
        return rank(w, slack);
    };
    std::size_t current = stacked_rank(comp);
    for (std::size_t i = 0; i < m && current < m; ++i) {
        auto trial = comp;
        trial.push_back(a->basis_vector(i));
        const std::size_t r = stacked_rank(trial);
        if (r > current) {
            comp = std::move(trial);
            current = r;
        }
    }
    const std::size_t r = comp.size();
    Matrix w(ctx, m, m);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < m; ++i) w(i, j) = comp[j][i];
    for (std::size_t j = 0; j < q.nil_basis.size(); ++j)
        for (std::size_t i = 0; i < m; ++i) w(i, r + j) = q.nil_basis[j][i];
    const Matrix winv = inverse(w, slack);
    q.lift = Matrix(ctx, m, r);
    q.project = Matrix(ctx, r, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < r; ++j) q.lift(i, j) = w(i, j);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < m; ++j) q.project(i, j) = winv(i, j);
    FinAlgebra::Constants c(r, std::vector<std::vector<PadicScalar>>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            const auto prod = a->multiply(comp[i], comp[j]);
            std::vector<PadicScalar> y(r, PadicScalar::zero(ctx));
            for (std::size_t k = 0; k < r; ++k)
                for (std::size_t t = 0; t < m; ++t) y[k] += q.project(k, t) * prod[t];
            c[i][j] = std::move(y);
        }
    std::vector<PadicScalar> one(r, PadicScalar::zero(ctx));
    one[0] = PadicScalar::one(ctx);
    q.reduced = FinAlgebra::create(ctx, std::move(c), std::move(one));
    return q;
}

namespace detail {

// Multiplication table of a finite F_p-algebra: t[i][j] = coordinates of w_i w_j.
using FpTable = std::vector<std::vector<fp::Vec>>;

inline fp::Vec fp_multiply(const FpTable& t, const fp::Vec& a, const fp::Vec& b, std::int64_t p) {
    const std::size_t r = a.size();
    fp::Vec out(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < r; ++j) {
            if (b[j] == 0) continue;
            const std::int64_t ab = fp::mul(a[i], b[j], p);
            for (std::size_t k = 0; k < r; ++k)
                if (t[i][j][k]) out[k] = fp::reduce(out[k] + fp::mul(ab, t[i][j][k], p), p);
        }
    }
    return out;
}

inline fp::Vec fp_power(const FpTable& t, const fp::Vec& one, fp::Vec a, std::int64_t e, std::int64_t p) {
    fp::Vec r = one;
    while (e > 0) {
        if (e & 1) r = fp_multiply(t, r, a, p);
        e >>= 1;
        if (e) a = fp_multiply(t, a, a, p);
    }
    return r;
}

// Matrix (columns) of a map given by images of basis vectors.
inline fp::Mat fp_columns(const std::vector<fp::Vec>& images) {
    const std::size_t r = images.size();
    fp::Mat m(r, fp::Vec(r, 0));
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < r; ++i) m[i][j] = images[j][i];
    return m;
}

inline std::int64_t to_fp(const PadicScalar& x, const std::string& what) {
    if (x.valuation_bound() < 0)
        throw IntegralStructureFailure(what + ": coordinate of negative valuation in an integral model");
    if (x.precision() < 1) throw IntegralStructureFailure(what + ": no p-adic digits left");
    return x.residue_mod_p();
}

struct Order {
    Matrix basis;      // columns: order basis in reduced coordinates
    Matrix inverse;    // basis^-1
    FpTable table;     // O/pO multiplication
    fp::Vec one;       // unit of O/pO
};

inline Order make_order(const Algebra& red, Matrix basis, std::int64_t slack) {
    const Context& ctx = red->context();
    const std::size_t r = red->dim();
    Order o;
    o.inverse = inverse(basis, slack);
    o.basis = std::move(basis);
    std::vector<std::vector<PadicScalar>> cols(r);
    for (std::size_t j = 0; j < r; ++j) {
        cols[j].resize(r);
        for (std::size_t i = 0; i < r; ++i) cols[j][i] = o.basis(i, j);
    }
    auto coords = [&](const std::vector<PadicScalar>& v) {
        std::vector<PadicScalar> out(r, PadicScalar::zero(ctx));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) out[i] += o.inverse(i, j) * v[j];
        return out;
    };
    o.table.assign(r, std::vector<fp::Vec>(r, fp::Vec(r, 0)));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j) {
            const auto g = coords(red->multiply(cols[i], cols[j]));
            for (std::size_t k = 0; k < r; ++k) o.table[i][j][k] = to_fp(g[k], "order structure constants");
            o.table[j][i] = o.table[i][j];
        }
    const auto u = coords(red->unit_vector());
    o.one.resize(r);
    for (std::size_t k = 0; k < r; ++k) o.one[k] = to_fp(u[k], "order unit");
    return o;
}

inline std::int64_t frobenius_depth(std::int64_t p, std::size_t r) {
    std::int64_t t = 1;
    for (std::int64_t q = p; q < static_cast<std::int64_t>(r); q *= p) ++t;
    return t;
}

// x -> x^(p^t) as a matrix over F_p.
inline fp::Mat frobenius_power(const Order& o, std::int64_t p, std::int64_t t) {
    const std::size_t r = o.one.size();
    std::vector<fp::Vec> images;
    for (std::size_t i = 0; i < r; ++i) {
        fp::Vec x(r, 0);
        x[i] = 1;
        for (std::int64_t s = 0; s < t; ++s) x = fp_power(o.table, o.one, x, p, p);
        images.push_back(std::move(x));
    }
    return fp_columns(images);
}

// Integral basis (columns, order coordinates) of the lattice spanned by the
// lifts of an F_p subspace together with p * O.
inline std::vector<std::vector<long>> lattice_with_p(const std::vector<fp::Vec>& rows, std::size_t r,
                                                     std::int64_t p, bool divide_by_p,
                                                     std::vector<std::size_t>* pivots_out = nullptr) {
    auto [basis, pivots] = fp::span_basis(rows, p);
    std::vector<bool> is_pivot(r, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<long>> cols;
    for (const auto& v : basis) cols.emplace_back(v.begin(), v.end());
    for (std::size_t j = 0; j < r; ++j) {
        if (is_pivot[j]) continue;
        std::vector<long> e(r, 0);
        e[j] = divide_by_p ? 1 : static_cast<long>(p);
        cols.push_back(std::move(e));
    }
    if (pivots_out) *pivots_out = pivots;
    return cols;
}

// One enlargement step; returns false when the order is already p-maximal.
inline bool enlarge_order(const Algebra& red, Order& o, std::int64_t slack) {
    const Context& ctx = red->context();
    const std::int64_t p = ctx->prime();
    const std::size_t r = o.one.size();
    const fp::Mat ft = frobenius_power(o, p, frobenius_depth(p, r));
    const auto rad = fp::kernel(ft, r, p);
    if (rad.empty()) return false;
    // Z_p-basis of the p-radical I in order coordinates
    const auto icols = lattice_with_p(rad, r, p, false);
    Matrix jm(ctx, r, r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < r; ++i) jm(i, j) = PadicScalar::from_int(ctx, icols[j][i]);
    const Matrix jinv = inverse(jm, slack);
    // x in U iff x * I is contained in p I
    fp::Mat big(r * r, fp::Vec(r, 0));
    for (std::size_t x = 0; x < r; ++x)
        for (std::size_t b = 0; b < r; ++b) {
            // exact product w_x * I_b in order coordinates, from the integral structure constants
            std::vector<PadicScalar> ib(r);
            for (std::size_t i = 0; i < r; ++i) ib[i] = jm(i, b);
            std::vector<PadicScalar> ox(r, PadicScalar::zero(ctx));
            ox[x] = PadicScalar::one(ctx);
            std::vector<PadicScalar> ored(r, PadicScalar::zero(ctx)), ibred(r, PadicScalar::zero(ctx));
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) {
                    ored[i] += o.basis(i, j) * ox[j];
                    ibred[i] += o.basis(i, j) * ib[j];
                }
            const auto pr = red->multiply(ored, ibred);
            std::vector<PadicScalar> ocoords(r, PadicScalar::zero(ctx));
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) ocoords[i] += o.inverse(i, j) * pr[j];
            for (std::size_t l = 0; l < r; ++l) {
                PadicScalar c = PadicScalar::zero(ctx);
                for (std::size_t j = 0; j < r; ++j) c += jinv(l, j) * ocoords[j];
                big[b * r + l][x] = to_fp(c, "p-radical multiplier");
            }
        }
    const auto ubar = fp::kernel(big, r, p);
    if (ubar.empty()) return false;
    std::vector<std::size_t> pivots;
    const auto ncols = lattice_with_p(ubar, r, p, true, &pivots);
    Matrix step(ctx, r, r);
    const PadicScalar inv_p = PadicScalar::power_of_p(ctx, -1);
    for (std::size_t j = 0; j < r; ++j) {
        const bool from_u = j < pivots.size();
        for (std::size_t i = 0; i < r; ++i) {
            const PadicScalar v = PadicScalar::from_int(ctx, ncols[j][i]);
            step(i, j) = from_u ? v * inv_p : v;
        }
    }
    o = make_order(red, o.basis * step, slack);
    return true;
}

} // namespace detail

/// Primitive idempotents of A: pairwise orthogonal, summing to 1.
inline std::vector<AlgElement> idempotents(const Algebra& a, std::int64_t slack = kDefaultSlack) {
    const Context& ctx = a->context();
    const std::int64_t p = ctx->prime();
    const ReducedQuotient q = reduced_quotient(a, slack);
    const Algebra& red = q.reduced;
    const std::size_t r = red->dim();
    if (r == 1) return {AlgElement::one(a)};

    std::int64_t min_val = 0;
    for (const auto& plane : red->constants())
        for (const auto& row : plane)
            for (const auto& c : row) min_val = std::min(min_val, c.valuation_bound());
    const std::int64_t s = -min_val;
    Matrix b0(ctx, r, r);
    for (std::size_t i = 0; i < r; ++i) b0(i, i) = i == 0 ? PadicScalar::one(ctx) : PadicScalar::power_of_p(ctx, s);
    detail::Order o = detail::make_order(red, b0, slack);
    const std::int64_t cap = 8 * static_cast<std::int64_t>(r) * ctx->precision();
    std::int64_t steps = 0;
    while (detail::enlarge_order(red, o, slack))
        if (++steps > cap) throw IntegralStructureFailure("idempotents: order enlargement did not terminate");

    // Frobenius-fixed subalgebra of O/pO and its primitive idempotents
    std::vector<fp::Vec> images;
    for (std::size_t i = 0; i < r; ++i) {
        fp::Vec x(r, 0);
        x[i] = 1;
        fp::Vec y = detail::fp_power(o.table, o.one, x, p, p);
        y[i] = fp::reduce(y[i] - 1, p);
        images.push_back(std::move(y));
    }
    const auto fixed = fp::kernel(detail::fp_columns(images), r, p);
    std::vector<fp::Vec> parts{o.one};
    for (const auto& sv : fixed) {
        if (parts.size() == fixed.size()) break;
        std::vector<fp::Vec> next;
        for (const auto& e : parts) {
            for (std::int64_t c = 0; c < p; ++c) {
                fp::Vec shifted = sv;
                for (std::size_t k = 0; k < r; ++k) shifted[k] = fp::reduce(shifted[k] - c * o.one[k], p);
                const fp::Vec w = detail::fp_power(o.table, o.one, shifted, p - 1, p);
                fp::Vec f = detail::fp_multiply(o.table, e, w, p);
                for (std::size_t k = 0; k < r; ++k) f[k] = fp::reduce(e[k] - f[k], p);
                if (std::any_of(f.begin(), f.end(), [](std::int64_t v) { return v != 0; })) next.push_back(f);
            }
        }
        parts = std::move(next);
    }

    std::vector<AlgElement> out;
    const std::int64_t max_iter = 2 * static_cast<std::int64_t>(a->dim()) + 64;
    for (const auto& e : parts) {
        std::vector<PadicScalar> redc(r, PadicScalar::zero(ctx));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                if (e[j]) redc[i] += o.basis(i, j) * PadicScalar::from_int(ctx, static_cast<long>(e[j]));
        AlgElement x = q.from_reduced(a, redc);
        bool converged = false;
        for (std::int64_t it = 0; it < max_iter; ++it) {
            const AlgElement x2 = x * x;
            if (x2 == x && x.min_precision() > 0) {
                converged = true;
                break;
            }
            const PadicScalar three = PadicScalar::from_int(ctx, 3), two = PadicScalar::from_int(ctx, 2);
            x = three * x2 - two * (x2 * x);
        }
        if (!converged) throw IntegralStructureFailure("idempotents: Newton lifting did not converge");
        out.push_back(std::move(x));
    }
    // guard: orthogonal and complete
    AlgElement sum = AlgElement::zero(a);
    for (std::size_t i = 0; i < out.size(); ++i) {
        sum += out[i];
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (!(out[i] * out[j]).is_zero())
                throw IntegralStructureFailure("idempotents: lifted idempotents are not orthogonal");
    }
    if (!(sum == AlgElement::one(a))) throw IntegralStructureFailure("idempotents: lifted idempotents do not sum to 1");
    return out;
}

inline bool is_connected(const Algebra& a, std::int64_t slack = kDefaultSlack) {
    return idempotents(a, slack).size() == 1;
}

/// The algebra e*A with unit e, and the projection x -> e*x.
struct Component {
    Algebra algebra;
    AlgElement idempotent;
    Matrix embedding;  ///< dim(A) x dim(eA): component basis in A coordinates
    AlgebraMorphism projection;
};

inline Component component_algebra(const AlgElement& e, std::int64_t slack = kDefaultSlack) {
    const Algebra& a = e.algebra();
    const Context& ctx = a->context();
    const std::size_t m = a->dim();
    std::vector<std::vector<PadicScalar>> chosen;
    auto as_matrix = [&](const std::vector<std::vector<PadicScalar>>& cols) {
        Matrix w(ctx, m, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < m; ++i) w(i, j) = cols[j][i];
        return w;
    };
    chosen.push_back(e.coords());
    for (std::size_t i = 0; i < m; ++i) {
        auto trial = chosen;
        trial.push_back((e * AlgElement::basis(a, i)).coords());
        if (rank(as_matrix(trial), slack) == trial.size()) chosen = std::move(trial);
    }
    const std::size_t c = chosen.size();
    const Matrix w = as_matrix(chosen);
    auto coords = [&](const std::vector<PadicScalar>& v) {
        auto x = solve(w, v, slack);
        if (!x) throw IntegralStructureFailure("component_algebra: product left the component");
        return *x;
    };
    FinAlgebra::Constants k(c, std::vector<std::vector<PadicScalar>>(c));
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) k[i][j] = coords(a->multiply(chosen[i], chosen[j]));
    std::vector<PadicScalar> one(c, PadicScalar::zero(ctx));
    one[0] = PadicScalar::one(ctx);
    Algebra comp = FinAlgebra::create(ctx, std::move(k), std::move(one));
    Matrix proj(ctx, c, m);
    for (std::size_t j = 0; j < m; ++j) {
        const auto y = coords((e * AlgElement::basis(a, j)).coords());
        for (std::size_t i = 0; i < c; ++i) proj(i, j) = y[i];
    }
    return Component{comp, e, w, AlgebraMorphism(a, comp, proj)};
}

/// u = scalar_part * (1 + nilpotent_part) with nilpotent_part in the nilradical.
struct NilUnitDecomposition {
    AlgElement nilpotent_part;
    PadicScalar scalar_part;
};

/// Finite log of 1 + n for nilpotent n.
inline AlgElement nil_log(const AlgElement& one_plus_n) {
    const Algebra& a = one_plus_n.algebra();
    const Context& ctx = a->context();
    const AlgElement n = one_plus_n - AlgElement::one(a);
    AlgElement sum = AlgElement::zero(a);
    AlgElement power = n;
    for (std::size_t k = 1; k <= a->dim(); ++k) {
        const PadicScalar c = PadicScalar::from_rational(ctx, k % 2 ? 1 : -1, static_cast<long>(k));
        sum += c * power;
        power = power * n;
    }
    return sum;
}

/// Finite exp of a nilpotent element.
inline AlgElement nil_exp(const AlgElement& n) {
    const Algebra& a = n.algebra();
    const Context& ctx = a->context();
    AlgElement sum = AlgElement::one(a);
    AlgElement term = AlgElement::one(a);
    for (std::size_t k = 1; k <= a->dim(); ++k) {
        term = PadicScalar::from_rational(ctx, 1, static_cast<long>(k)) * (term * n);
        sum += term;
    }
    return sum;
}

/// Scalar part of x along the reduced quotient of a connected, split algebra.
inline PadicScalar split_scalar_part(const ReducedQuotient& q, const AlgElement& x) {
    return q.to_reduced(x)[0];
}

inline void require_split_connected(const Algebra& a, const ReducedQuotient& q, std::int64_t slack) {
    if (!is_connected(a, slack)) throw NotConnected("algebra has more than one primitive idempotent");
    if (q.reduced->dim() != 1)
        throw NonSplitResidue("connected algebra whose reduced quotient has dimension " +
                              std::to_string(q.reduced->dim()) + " over Q_p");
}

inline NilUnitDecomposition decompose_unit(const AlgElement& u, std::int64_t slack = kDefaultSlack) {
    const Algebra& a = u.algebra();
    const ReducedQuotient q = reduced_quotient(a, slack);
    require_split_connected(a, q, slack);
    const PadicScalar s = split_scalar_part(q, u);
    if (s.is_zero()) throw NotAUnit("decompose_unit: scalar part is zero to precision");
    const AlgElement n = s.inverse() * u - AlgElement::one(a);
    return {n, s};
}

} // namespace simpson
