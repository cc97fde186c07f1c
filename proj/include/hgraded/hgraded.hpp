#pragma once

#include "hgraded/abelian_group.hpp"
#include "hgraded/atlas_io.hpp"
#include "hgraded/covering.hpp"
#include "hgraded/cyclotomic.hpp"
#include "hgraded/error.hpp"
#include "hgraded/expression.hpp"
#include "hgraded/graded_ops.hpp"
#include "hgraded/morphism.hpp"
#include "hgraded/signature.hpp"
#include "hgraded/super_polynomial.hpp"
#include "hgraded/super_rational.hpp"
