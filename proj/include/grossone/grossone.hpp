#pragma once

#include "grossone/errors.hpp"
#include "grossone/rational.hpp"
#include "grossone/gross_number.hpp"
#include "grossone/gross_eval.hpp"
#include "grossone/gross_linalg.hpp"
#include "grossone/rational_matrix.hpp"
#include "grossone/simplex.hpp"
#include "grossone/lp_io.hpp"
#include "grossone/poly_expr.hpp"
#include "grossone/nlp_io.hpp"
#include "grossone/penalty.hpp"
