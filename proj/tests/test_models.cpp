#include <doctest.h>
#include "nh/analysis.hpp"
