#pragma once

// Umbrella header (the JSON report and manifest headers are separate: they pull in nlohmann and OpenSSL).

#include "qmax/bounds.hpp"
#include "qmax/closed_forms.hpp"
#include "qmax/deg5.hpp"
#include "qmax/elimination.hpp"
#include "qmax/optimizer.hpp"
#include "qmax/poly.hpp"
#include "qmax/q_function.hpp"
#include "qmax/rational.hpp"
#include "qmax/resultant.hpp"
#include "qmax/roots.hpp"
#include "qmax/signature.hpp"
#include "qmax/verify.hpp"
