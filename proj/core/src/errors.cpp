#include "motslab/errors.hpp"
