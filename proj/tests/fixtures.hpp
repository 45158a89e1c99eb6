#pragma once

#include <string>

#include "trimani/complex.hpp"
#include "trimani/io.hpp"

namespace fixtures {

inline trimani::Complex load(const std::string& name) {
  return trimani::read_facet_file(std::string(TRIMANI_TEST_DATA) + "/" + name);
}

}  // namespace fixtures
