#pragma once

#include "vh/errors.hpp"
#include "vh/core_types.hpp"
#include "vh/config.hpp"
#include "vh/variant.hpp"
#include "vh/potentials.hpp"
#include "vh/nu_engine.hpp"
#include "vh/spectrum.hpp"
#include "vh/wavefunctions.hpp"
#include "vh/oracle.hpp"
#include "vh/conformance.hpp"
