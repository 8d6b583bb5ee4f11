#pragma once

namespace tk {

// total-degree guardrail; hard error instead of silent blow-up
namespace guard {

unsigned max_degree();          // default 64, TRANSCEND_MAX_DEGREE overrides
void set_max_degree(unsigned);  // CLI --max-degree
void check_degree(unsigned candidate);

}  // namespace guard
}  // namespace tk
