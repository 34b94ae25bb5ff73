#include <doctest.h>

TEST_CASE("placeholder_compiler") { CHECK(true); }
