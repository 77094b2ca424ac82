#pragma once

#include "pqosc/coherent.hpp"
#include "pqosc/deformation.hpp"
#include "pqosc/errors.hpp"
#include "pqosc/fock.hpp"
#include "pqosc/matrix.hpp"
#include "pqosc/polynomial.hpp"
#include "pqosc/pq_calculus.hpp"
#include "pqosc/pq_numbers.hpp"
#include "pqosc/series.hpp"
#include "pqosc/susy.hpp"
#include "pqosc/verify.hpp"

namespace pqosc {
inline constexpr const char* version = "0.1.0";
}
