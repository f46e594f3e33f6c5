#include "hxc/report.hpp"

#include "hxc/error.hpp"

namespace hxc {

std::string status_str(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Error: return "error";
    }
    return "error";
}

Check& Report::add(const std::string& name, bool ok, json witness, std::string note) {
    Check c;
    c.name = name;
    c.status = ok ? Status::Pass : Status::Fail;
    if (!ok) c.witness = std::move(witness);
    c.note = std::move(note);
    checks.push_back(std::move(c));
    return checks.back();
}

void Report::add_error(const std::string& name, const std::string& kind, const std::string& msg) {
    Check c;
    c.name = name;
    c.status = Status::Error;
    c.witness = json{{"kind", kind}, {"message", msg}};
    checks.push_back(std::move(c));
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (Check c : other.checks) {
        c.name = prefix + c.name;
        checks.push_back(std::move(c));
    }
    for (const auto& conv : other.conventions)
        if (std::find(conventions.begin(), conventions.end(), conv) == conventions.end()) conventions.push_back(conv);
}

bool Report::passed() const {
    for (const auto& c : checks)
        if (c.status != Status::Pass) return false;
    return true;
}

bool Report::has(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return true;
    return false;
}

const Check& Report::get(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    fail("UnknownName", "report has no check named '" + name + "'");
}

namespace {

json truncate(const json& w, std::size_t limit) {
    if (limit == 0) return w;
    if (w.is_array()) {
        json out = json::array();
        for (std::size_t k = 0; k < w.size() && k < limit; ++k) out.push_back(truncate(w[k], limit));
        if (w.size() > limit) out.push_back("...");
        return out;
    }
    if (w.is_object()) {
        json out = json::object();
        for (auto it = w.begin(); it != w.end(); ++it) out[it.key()] = truncate(it.value(), limit);
        return out;
    }
    return w;
}

}  // namespace

json Report::to_json(std::size_t witness_limit) const {
    json j;
    j["title"] = title;
    j["status"] = passed() ? "pass" : "fail";
    json cs = json::array();
    for (const auto& c : checks) {
        json e;
        e["name"] = c.name;
        e["status"] = status_str(c.status);
        if (!c.witness.is_null()) e["witness"] = truncate(c.witness, witness_limit);
        if (!c.note.empty()) e["note"] = c.note;
        cs.push_back(std::move(e));
    }
    j["checks"] = std::move(cs);
    if (!conventions.empty()) j["conventions"] = conventions;
    if (!data.empty()) j["data"] = data;
    return j;
}

json scalar_json(const Scalar& s) { return s.str(); }

json vec_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

json mat_json(const Mat& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) a.push_back(vec_json(m.row(i)));
    return a;
}

}  // namespace hxc
