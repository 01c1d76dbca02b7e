#pragma once

// Umbrella header for the algebra kernel.

#include "nsproj/errors.hpp"
#include "nsproj/rational.hpp"
#include "nsproj/hyper_number.hpp"
#include "nsproj/squeeze.hpp"
#include "nsproj/projective.hpp"
#include "nsproj/transform.hpp"
#include "nsproj/conics.hpp"
