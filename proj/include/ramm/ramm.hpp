#pragma once

#include "ramm/analysis.hpp"
#include "ramm/codec.hpp"
#include "ramm/core.hpp"
#include "ramm/digits.hpp"
#include "ramm/errors.hpp"
#include "ramm/image.hpp"
#include "ramm/trace.hpp"
