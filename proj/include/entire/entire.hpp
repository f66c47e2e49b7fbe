#pragma once

#include "entire/certificate.hpp"
#include "entire/errors.hpp"
#include "entire/lattice.hpp"
#include "entire/laurent.hpp"
#include "entire/number.hpp"
#include "entire/numeric.hpp"
#include "entire/reduction.hpp"
#include "entire/text.hpp"
#include "entire/verdict.hpp"
