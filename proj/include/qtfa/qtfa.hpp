#pragma once

#include "quaternion.hpp"
#include "numerics.hpp"
#include "hermite.hpp"
#include "signal.hpp"
#include "bargmann.hpp"
#include "qstft.hpp"
