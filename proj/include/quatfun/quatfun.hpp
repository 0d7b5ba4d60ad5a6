#pragma once

#include "catalogue.hpp"
#include "conj_poly.hpp"
#include "conj_rational.hpp"
#include "currents.hpp"
#include "currents1d.hpp"
#include "errors.hpp"
#include "forms.hpp"
#include "operators.hpp"
#include "parallel.hpp"
#include "parse.hpp"
#include "qfunction.hpp"
#include "quat.hpp"
#include "scalar.hpp"
#include "schedule.hpp"
#include "sphere.hpp"
#include "test_forms.hpp"
