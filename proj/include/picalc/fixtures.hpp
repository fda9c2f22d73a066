#pragma once

#include <string>
#include <vector>

namespace picalc {

struct FixtureOptions {
    /// Probe depth for the weak-barb fixture.
    std::size_t k = 10;
};

struct FixtureReport {
    std::string id;
    std::string title;
    bool pass = true;
    /// One line per assertion, prefixed with PASS or FAIL.
    std::vector<std::string> lines;
};

/// ex1 .. ex7, bb98, ccs-barbs, pi-pa.
const std::vector<std::string>& fixture_ids();

/// Throws std::invalid_argument for an unknown id.
FixtureReport run_fixture(const std::string& id, const FixtureOptions& options = {});

} // namespace picalc
