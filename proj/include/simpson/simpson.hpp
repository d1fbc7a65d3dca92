#pragma once

/**
 * @file simpson.hpp
 * @brief Umbrella header.
 */

#include "simpson/error.hpp"
#include "simpson/padic.hpp"
#include "simpson/padic_series.hpp"
#include "simpson/matrix.hpp"
#include "simpson/linalg.hpp"
#include "simpson/charpoly.hpp"
#include "simpson/fp.hpp"
#include "simpson/algebra.hpp"
#include "simpson/algebra_structure.hpp"
#include "simpson/algebra_exp.hpp"
#include "simpson/random.hpp"
#include "simpson/root_class.hpp"
#include "simpson/higgs.hpp"
#include "simpson/spectral.hpp"
#include "simpson/koszul.hpp"
#include "simpson/generate.hpp"
#include "simpson/io.hpp"
#include "simpson/verify.hpp"
