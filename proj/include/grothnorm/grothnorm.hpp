#pragma once

#include "grothnorm/closed_form.hpp"
#include "grothnorm/gram_opt.hpp"
#include "grothnorm/grothmat.hpp"
#include "grothnorm/matrix.hpp"
#include "grothnorm/oracle.hpp"
#include "grothnorm/parallel.hpp"
#include "grothnorm/rng.hpp"
#include "grothnorm/rounding.hpp"
#include "grothnorm/special_functions.hpp"
#include "grothnorm/verify.hpp"
