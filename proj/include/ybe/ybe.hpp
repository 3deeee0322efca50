#pragma once

#include "ybe/affine.hpp"
#include "ybe/derived.hpp"
#include "ybe/enumerate.hpp"
#include "ybe/errors.hpp"
#include "ybe/json_io.hpp"
#include "ybe/perm.hpp"
#include "ybe/permgroup.hpp"
#include "ybe/report.hpp"
#include "ybe/solution.hpp"
