#pragma once

// Everything at once.

#include "kwbound/boolean.hpp"
#include "kwbound/builders.hpp"
#include "kwbound/certificate.hpp"
#include "kwbound/comm_matrix.hpp"
#include "kwbound/cutting_plane.hpp"
#include "kwbound/error.hpp"
#include "kwbound/exact_cover.hpp"
#include "kwbound/float_guide.hpp"
#include "kwbound/formula.hpp"
#include "kwbound/formula_search.hpp"
#include "kwbound/interior_point.hpp"
#include "kwbound/json_io.hpp"
#include "kwbound/rational.hpp"
#include "kwbound/rect.hpp"
#include "kwbound/rect_oracle.hpp"
#include "kwbound/report.hpp"
#include "kwbound/simplex.hpp"
#include "kwbound/stable_set.hpp"
#include "kwbound/submatrices.hpp"
#include "kwbound/tangency.hpp"
