#pragma once

#include <iosfwd>

namespace momentinfo::selftest {

/// Runs the full acceptance suite, printing one PASS/FAIL line per criterion.
/// Returns the number of failed criteria.
int run_acceptance(std::ostream& out);

} // namespace momentinfo::selftest
