#pragma once

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

namespace dgc::test {

// Seed for property tests: DGC_SEED overrides the default. Always printed.
inline std::uint64_t seed_for(const std::string& what, std::uint64_t fallback) {
  std::uint64_t s = fallback;
  if (const char* env = std::getenv("DGC_SEED")) s = std::strtoull(env, nullptr, 10);
  std::cout << "[seed] " << what << " = " << s << "\n";
  return s;
}

}  // namespace dgc::test
