#pragma once

/**
 * @file algebra.hpp
 * @brief Finite-dimensional commutative unital Q_p-algebras by structure constants.
 */

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "simpson/linalg.hpp"

namespace simpson {

class FinAlgebra;
using Algebra = std::shared_ptr<const FinAlgebra>;

class FinAlgebra {
public:
    /// mul[i][j][k] is the coefficient of basis element k in b_i * b_j.
    using Constants = std::vector<std::vector<std::vector<PadicScalar>>>;

    static Algebra create(const Context& ctx, Constants mul, std::vector<PadicScalar> one,
                          std::vector<std::string> labels = {}) {
        const std::size_t m = mul.size();
        if (m == 0) throw ValidationError("algebra: dimension must be positive");
        if (one.size() != m) throw ValidationError("algebra: unit vector has wrong length");
        for (const auto& row : mul) {
            if (row.size() != m) throw ValidationError("algebra: structure constants are not m x m x m");
            for (const auto& v : row)
                if (v.size() != m) throw ValidationError("algebra: structure constants are not m x m x m");
        }
        if (labels.empty())
            for (std::size_t i = 0; i < m; ++i) labels.push_back("b" + std::to_string(i));
        if (labels.size() != m) throw ValidationError("algebra: label count differs from dimension");
        auto alg = std::shared_ptr<FinAlgebra>(new FinAlgebra(ctx, std::move(mul), std::move(one), std::move(labels)));
        alg->validate();
        return alg;
    }

    /// K[x]/(f) with f = x^m + f[m-1] x^(m-1) + ... + f[0]; basis 1, x, ..., x^(m-1).
    static Algebra monogenic(const Context& ctx, const std::vector<PadicScalar>& f) {
        const std::size_t m = f.size();
        if (m == 0) return field(ctx);
        // x^k for k < 2m - 1 reduced to the power basis
        std::vector<std::vector<PadicScalar>> pw;
        for (std::size_t k = 0; k < 2 * m - 1; ++k) {
            std::vector<PadicScalar> v(m, PadicScalar::zero(ctx));
            if (k < m) {
                v[k] = PadicScalar::one(ctx);
            } else {
                const auto& prev = pw[k - 1];
                for (std::size_t i = 0; i + 1 < m; ++i) v[i + 1] = prev[i];
                const PadicScalar top = prev[m - 1];
                for (std::size_t i = 0; i < m; ++i) v[i] -= top * f[i];
            }
            pw.push_back(std::move(v));
        }
        Constants c(m, std::vector<std::vector<PadicScalar>>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) c[i][j] = pw[i + j];
        std::vector<PadicScalar> one(m, PadicScalar::zero(ctx));
        one[0] = PadicScalar::one(ctx);
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < m; ++i) labels.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
        return create(ctx, std::move(c), std::move(one), std::move(labels));
    }

    static Algebra monogenic(const Context& ctx, const std::vector<long>& f) {
        std::vector<PadicScalar> g;
        for (long a : f) g.push_back(PadicScalar::from_int(ctx, a));
        return monogenic(ctx, g);
    }

    static Algebra field(const Context& ctx) {
        return create(ctx, Constants{{{PadicScalar::one(ctx)}}}, {PadicScalar::one(ctx)}, {"1"});
    }

    const Context& context() const noexcept { return ctx_; }
    std::size_t dim() const noexcept { return m_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const PadicScalar& constant(std::size_t i, std::size_t j, std::size_t k) const { return mul_[i][j][k]; }
    const Constants& constants() const noexcept { return mul_; }
    const std::vector<PadicScalar>& unit_vector() const noexcept { return one_; }

    std::vector<PadicScalar> multiply(const std::vector<PadicScalar>& a, const std::vector<PadicScalar>& b) const {
        std::vector<PadicScalar> r(m_, PadicScalar::zero(ctx_));
        for (std::size_t i = 0; i < m_; ++i) {
            if (exact_zero(a[i])) continue;
            for (std::size_t j = 0; j < m_; ++j) {
                if (exact_zero(b[j])) continue;
                const PadicScalar ab = a[i] * b[j];
                for (std::size_t k = 0; k < m_; ++k) {
                    const PadicScalar& c = mul_[i][j][k];
                    if (exact_zero(c)) continue;
                    r[k] += ab * c;
                }
            }
        }
        return r;
    }

    /// Matrix of y -> a*y in the basis: column j holds a * b_j.
    Matrix left_multiplication(const std::vector<PadicScalar>& a) const {
        Matrix l(ctx_, m_, m_);
        for (std::size_t j = 0; j < m_; ++j)
            for (std::size_t k = 0; k < m_; ++k) {
                PadicScalar acc = PadicScalar::zero(ctx_);
                for (std::size_t i = 0; i < m_; ++i) {
                    if (exact_zero(a[i]) || exact_zero(mul_[i][j][k])) continue;
                    acc += a[i] * mul_[i][j][k];
                }
                l(k, j) = acc;
            }
        return l;
    }

    std::vector<PadicScalar> basis_vector(std::size_t i) const {
        std::vector<PadicScalar> v(m_, PadicScalar::zero(ctx_));
        v.at(i) = PadicScalar::one(ctx_);
        return v;
    }

    /// The same algebra over a wider context; constants known to full precision are read as exact.
    /// The axioms were checked at the original precision and are not rechecked.
    Algebra lifted(const Context& wide) const {
        Constants c = mul_;
        for (auto& plane : c)
            for (auto& row : plane)
                for (auto& x : row) x = exact_lift(x, wide);
        std::vector<PadicScalar> one = one_;
        for (auto& x : one) x = exact_lift(x, wide);
        return std::shared_ptr<FinAlgebra>(new FinAlgebra(wide, std::move(c), std::move(one), labels_));
    }

    static bool exact_zero(const PadicScalar& x) {
        return x.is_zero() && x.precision() >= x.context()->precision();
    }

private:
    FinAlgebra(const Context& ctx, Constants mul, std::vector<PadicScalar> one, std::vector<std::string> labels)
        : ctx_(ctx), m_(mul.size()), mul_(std::move(mul)), one_(std::move(one)), labels_(std::move(labels)) {}

    void validate() const {
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < m_; ++j)
                for (std::size_t k = 0; k < m_; ++k)
                    if (!(mul_[i][j][k] == mul_[j][i][k]))
                        throw ValidationError("algebra: not commutative at (" + std::to_string(i) + ", " +
                                              std::to_string(j) + ")");
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < m_; ++j) {
                const auto bij = mul_[i][j];
                for (std::size_t k = 0; k < m_; ++k) {
                    const auto lhs = multiply(bij, basis_vector(k));
                    const auto rhs = multiply(basis_vector(i), mul_[j][k]);
                    for (std::size_t t = 0; t < m_; ++t)
                        if (!(lhs[t] == rhs[t]))
                            throw ValidationError("algebra: not associative at (" + std::to_string(i) + ", " +
                                                  std::to_string(j) + ", " + std::to_string(k) + ")");
                }
            }
        for (std::size_t i = 0; i < m_; ++i) {
            const auto v = multiply(one_, basis_vector(i));
            for (std::size_t t = 0; t < m_; ++t)
                if (!(v[t] == (t == i ? PadicScalar::one(ctx_) : PadicScalar::zero(ctx_))))
                    throw ValidationError("algebra: unit vector is not an identity for b" + std::to_string(i));
        }
    }

    Context ctx_;
    std::size_t m_;
    Constants mul_;
    std::vector<PadicScalar> one_;
    std::vector<std::string> labels_;
};

class AlgElement {
public:
    AlgElement() = default;
    AlgElement(Algebra alg, std::vector<PadicScalar> coords) : alg_(std::move(alg)), coords_(std::move(coords)) {
        if (coords_.size() != alg_->dim()) throw DimensionMismatch("algebra element has wrong coordinate count");
    }

    static AlgElement zero(const Algebra& alg) {
        return {alg, std::vector<PadicScalar>(alg->dim(), PadicScalar::zero(alg->context()))};
    }
    static AlgElement one(const Algebra& alg) { return {alg, alg->unit_vector()}; }
    static AlgElement basis(const Algebra& alg, std::size_t i) { return {alg, alg->basis_vector(i)}; }
    static AlgElement scalar(const Algebra& alg, const PadicScalar& a) { return a * one(alg); }

    const Algebra& algebra() const noexcept { return alg_; }
    const std::vector<PadicScalar>& coords() const noexcept { return coords_; }
    const PadicScalar& operator[](std::size_t i) const { return coords_[i]; }
    std::size_t dim() const noexcept { return coords_.size(); }

    friend AlgElement operator+(const AlgElement& a, const AlgElement& b) {
        check(a, b);
        auto c = a.coords_;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
        return {a.alg_, std::move(c)};
    }
    friend AlgElement operator-(const AlgElement& a, const AlgElement& b) {
        check(a, b);
        auto c = a.coords_;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coords_[i];
        return {a.alg_, std::move(c)};
    }
    AlgElement operator-() const {
        auto c = coords_;
        for (auto& x : c) x = -x;
        return {alg_, std::move(c)};
    }
    friend AlgElement operator*(const AlgElement& a, const AlgElement& b) {
        check(a, b);
        return {a.alg_, a.alg_->multiply(a.coords_, b.coords_)};
    }
    friend AlgElement operator*(const PadicScalar& s, const AlgElement& a) {
        auto c = a.coords_;
        for (auto& x : c) x = s * x;
        return {a.alg_, std::move(c)};
    }
    AlgElement& operator+=(const AlgElement& b) { return *this = *this + b; }
    AlgElement& operator-=(const AlgElement& b) { return *this = *this - b; }
    AlgElement& operator*=(const AlgElement& b) { return *this = *this * b; }

    AlgElement pow(std::uint64_t e) const {
        AlgElement r = one(alg_);
        AlgElement b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    Matrix multiplication_matrix() const { return alg_->left_multiplication(coords_); }

    /// Multiplicative inverse; NotAUnit when multiplication by this element is singular.
    AlgElement inverse(std::int64_t slack = kDefaultSlack) const {
        const Matrix l = multiplication_matrix();
        const RankResult rr = rank_with_margin(l, slack);
        if (rr.rank < alg_->dim()) throw NotAUnit("element is not a unit of the algebra");
        auto x = solve(l, alg_->unit_vector(), slack);
        if (!x) throw NotAUnit("element is not a unit of the algebra");
        return {alg_, std::move(*x)};
    }

    bool is_unit(std::int64_t slack = kDefaultSlack) const {
        return rank_with_margin(multiplication_matrix(), slack).rank == alg_->dim();
    }

    bool is_zero() const {
        for (const auto& x : coords_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool agrees_with(const AlgElement& b, std::int64_t digits) const {
        check(*this, b);
        for (std::size_t i = 0; i < coords_.size(); ++i)
            if (!coords_[i].agrees_with(b.coords_[i], digits)) return false;
        return true;
    }

    friend bool operator==(const AlgElement& a, const AlgElement& b) {
        check(a, b);
        for (std::size_t i = 0; i < a.coords_.size(); ++i)
            if (!(a.coords_[i] == b.coords_[i])) return false;
        return true;
    }

    std::int64_t min_valuation() const {
        std::int64_t v = std::numeric_limits<std::int64_t>::max();
        for (const auto& x : coords_) v = std::min(v, x.valuation_bound());
        return v;
    }

    std::int64_t min_precision() const {
        std::int64_t v = std::numeric_limits<std::int64_t>::max();
        for (const auto& x : coords_) v = std::min(v, x.precision());
        return v;
    }

    AlgElement in_context(const Context& ctx) const {
        auto c = coords_;
        for (auto& x : c) x = x.in_context(ctx);
        return {alg_, std::move(c)};
    }

    AlgElement reduced_to(std::int64_t prec) const {
        auto c = coords_;
        for (auto& x : c) x = x.reduced_to(prec);
        return {alg_, std::move(c)};
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ", ";
            s += format_scalar(coords_[i]);
        }
        return s + ")";
    }

private:
    static void check(const AlgElement& a, const AlgElement& b) {
        if (a.alg_.get() != b.alg_.get()) throw AlgebraMismatch("elements of different algebras");
    }

    Algebra alg_;
    std::vector<PadicScalar> coords_;
};

/// Linear map between algebras; column j is the image of source basis element j.
class AlgebraMorphism {
public:
    AlgebraMorphism(Algebra source, Algebra target, Matrix matrix)
        : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
        if (matrix_.rows() != target_->dim() || matrix_.cols() != source_->dim())
            throw DimensionMismatch("morphism matrix must be dim(target) x dim(source)");
    }

    static AlgebraMorphism identity(const Algebra& a) {
        return {a, a, Matrix::identity(a->context(), a->dim())};
    }

    /// The morphism between lifted algebras (see FinAlgebra::lifted).
    AlgebraMorphism lifted(const Algebra& source, const Algebra& target) const {
        Matrix m(target->context(), matrix_.rows(), matrix_.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = exact_lift(matrix_(i, j), target->context());
        return {source, target, std::move(m)};
    }

    const Algebra& source() const noexcept { return source_; }
    const Algebra& target() const noexcept { return target_; }
    const Matrix& matrix() const noexcept { return matrix_; }

    AlgElement operator()(const AlgElement& x) const {
        if (x.algebra().get() != source_.get()) throw AlgebraMismatch("morphism applied outside its source");
        std::vector<PadicScalar> out(target_->dim(), PadicScalar::zero(target_->context()));
        for (std::size_t i = 0; i < target_->dim(); ++i)
            for (std::size_t j = 0; j < source_->dim(); ++j) out[i] += matrix_(i, j) * x[j];
        return {target_, std::move(out)};
    }

    /// Throws ValidationError unless the map is unital and multiplicative.
    void validate() const {
        if (!((*this)(AlgElement::one(source_)) == AlgElement::one(target_)))
            throw ValidationError("morphism does not preserve the unit");
        for (std::size_t i = 0; i < source_->dim(); ++i)
            for (std::size_t j = i; j < source_->dim(); ++j) {
                const AlgElement bi = AlgElement::basis(source_, i), bj = AlgElement::basis(source_, j);
                if (!((*this)(bi * bj) == (*this)(bi) * (*this)(bj)))
                    throw ValidationError("morphism is not multiplicative on (" + std::to_string(i) + ", " +
                                          std::to_string(j) + ")");
            }
    }

    bool surjective(std::int64_t slack = kDefaultSlack) const { return rank(matrix_, slack) == target_->dim(); }

    /// Basis of the kernel, as elements of the source.
    std::vector<AlgElement> kernel_basis(std::int64_t slack = kDefaultSlack) const {
        std::vector<AlgElement> out;
        for (auto& v : simpson::kernel(matrix_, slack)) out.emplace_back(source_, std::move(v));
        return out;
    }

private:
    Algebra source_;
    Algebra target_;
    Matrix matrix_;
};

} // namespace simpson
