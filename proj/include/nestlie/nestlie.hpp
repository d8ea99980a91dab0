#pragma once

#include "nestlie/errors.hpp"
#include "nestlie/exactla.hpp"
#include "nestlie/random.hpp"
#include "nestlie/nestalg/nest.hpp"
#include "nestlie/nestalg/subalgebra.hpp"
#include "nestlie/liemaps/linmap.hpp"
#include "nestlie/liemaps/spaces.hpp"
#include "nestlie/decomp/certificate.hpp"
#include "nestlie/decomp/probes.hpp"
#include "nestlie/decomp/verify.hpp"
#include "nestlie/decomp/decompose.hpp"
#include "nestlie/io/json.hpp"
