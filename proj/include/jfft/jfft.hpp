#pragma once

#include "jfft/combinatorics.hpp"
#include "jfft/factor.hpp"
#include "jfft/build.hpp"
#include "jfft/transform.hpp"
#include "jfft/spectral.hpp"
#include "jfft/oracle.hpp"
#include "jfft/plan_io.hpp"
#include "jfft/vector_io.hpp"
