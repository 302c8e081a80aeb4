// The property suite on its own, runnable without the acceptance harness.

#include <doctest.h>

#include "properties.hpp"

TEST_CASE("catalog property suite") {
  for (const auto& r : mge::props::catalog_suite()) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.ok);
  }
}
