#include "torbase/perm.hpp"

// Perm is header-only; this TU anchors the header for the build.
