#pragma once

#include "nestlie/exactla/gaussian_rational.hpp"
#include "nestlie/exactla/matrix.hpp"
#include "nestlie/exactla/elimination.hpp"
#include "nestlie/exactla/sparse_kernel.hpp"
