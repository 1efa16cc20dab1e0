// Mat<S> is a header-only template; compiling the header standalone here
// keeps it self-contained.
#include "padop/matrix.hpp"
