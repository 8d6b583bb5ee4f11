#include "tk/guard.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "tk/error.hpp"

namespace tk {
namespace guard {

static unsigned initial_limit() {
    if (const char* env = std::getenv("TRANSCEND_MAX_DEGREE")) {
        long v = std::atol(env);
        if (v > 0) return (unsigned)v;
    }
    return 64;
}

static std::atomic<unsigned>& limit_slot() {
    static std::atomic<unsigned> limit{initial_limit()};
    return limit;
}

unsigned max_degree() { return limit_slot().load(); }
void set_max_degree(unsigned v) { limit_slot().store(v); }

void check_degree(unsigned candidate) {
    if (candidate > max_degree())
        fail(Err::DegreeGuardExceeded, "total degree " + std::to_string(candidate) +
                                           " exceeds limit " + std::to_string(max_degree()));
}

}  // namespace guard
}  // namespace tk
