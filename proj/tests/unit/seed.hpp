#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

// Property tests draw from a fixed seed unless QLG_TEST_SEED overrides it.
inline uint64_t test_seed() {
    if (const char* s = std::getenv("QLG_TEST_SEED")) return std::stoull(s);
    return 20240917ull;
}
