#pragma once

#include "hxc/linalg.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace hxc {

using json = nlohmann::ordered_json;

enum class Status { Pass, Fail, Error };

std::string status_str(Status s);

struct Check {
    std::string name;
    Status status = Status::Pass;
    json witness;  // null when the check passed
    std::string note;
};

/// Ordered list of named checks plus the convention choices they relied on.
struct Report {
    std::string title;
    std::vector<Check> checks;
    std::vector<std::string> conventions;
    json data = json::object();

    Check& add(const std::string& name, bool ok, json witness = nullptr, std::string note = {});
    void add_error(const std::string& name, const std::string& kind, const std::string& msg);
    void merge(const Report& other, const std::string& prefix = {});
    bool passed() const;
    bool has(const std::string& name) const;
    const Check& get(const std::string& name) const;
    bool ok(const std::string& name) const { return get(name).status == Status::Pass; }

    json to_json(std::size_t witness_limit = 0) const;
};

json scalar_json(const Scalar& s);
json vec_json(const Vec& v);
json mat_json(const Mat& m);

}  // namespace hxc
