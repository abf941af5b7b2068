#include "gll/moebius.hpp"
