#pragma once

#include "ccc/errors.hpp"
#include "ccc/mixed_radix.hpp"
#include "ccc/qary_function.hpp"
#include "ccc/waveform.hpp"
#include "ccc/exact_corr.hpp"
#include "ccc/code_set.hpp"
#include "ccc/constructors.hpp"
#include "ccc/verifier.hpp"
#include "ccc/random_fill.hpp"
#include "ccc/example72.hpp"
