#pragma once

// Umbrella header.

#include "qconv/bounds.hpp"
#include "qconv/channel.hpp"
#include "qconv/divergence.hpp"
#include "qconv/errors.hpp"
#include "qconv/exponent.hpp"
#include "qconv/hermitian.hpp"
#include "qconv/rng.hpp"
#include "qconv/serialization.hpp"
#include "qconv/simplex.hpp"
#include "qconv/verify.hpp"
