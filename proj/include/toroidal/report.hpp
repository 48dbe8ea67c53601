#pragma once

#include <string>
#include <vector>

namespace tor {

// Pass/fail result of a check, with the violated conditions in the order found.
struct Report {
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
    explicit operator bool() const { return ok(); }
    void fail(std::string why) { failures.push_back(std::move(why)); }
    void merge(const Report& o, const std::string& prefix = {}) {
        for (const auto& f : o.failures) failures.push_back(prefix + f);
    }
    std::string first() const { return failures.empty() ? std::string() : failures.front(); }
};

}  // namespace tor
