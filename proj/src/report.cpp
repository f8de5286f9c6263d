#include "pseudoproc/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace pseudoproc {

namespace {

double rel_of(double expected, double computed) {
    const double scale = std::max(std::abs(expected), std::abs(computed));
    if (scale < std::numeric_limits<double>::min()) return 0.0;
    return std::abs(expected - computed) / scale;
}

}  // namespace

void ValidationReport::add(CheckEntry entry) { entries_.push_back(std::move(entry)); }

void ValidationReport::merge(const ValidationReport& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

void ValidationReport::check_abs(const std::string& name, const std::string& anchor,
                                 double expected, double computed, double tolerance,
                                 bool formal_odd) {
    CheckEntry e;
    e.name = name;
    e.anchor = anchor;
    e.expected = expected;
    e.computed = computed;
    e.abs_err = std::abs(expected - computed);
    e.rel_err = rel_of(expected, computed);
    e.tolerance = tolerance;
    e.pass = std::isfinite(computed) && e.abs_err <= tolerance;
    e.formal_odd = formal_odd;
    entries_.push_back(std::move(e));
}

void ValidationReport::check_rel(const std::string& name, const std::string& anchor,
                                 double expected, double computed, double tolerance,
                                 bool formal_odd) {
    CheckEntry e;
    e.name = name;
    e.anchor = anchor;
    e.expected = expected;
    e.computed = computed;
    e.abs_err = std::abs(expected - computed);
    e.rel_err = rel_of(expected, computed);
    e.tolerance = tolerance;
    e.pass = std::isfinite(computed) && e.rel_err <= tolerance;
    e.formal_odd = formal_odd;
    entries_.push_back(std::move(e));
}

int ValidationReport::failures() const {
    return static_cast<int>(std::count_if(entries_.begin(), entries_.end(),
                                          [](const CheckEntry& e) { return !e.pass; }));
}

int ValidationReport::hard_failures() const {
    return static_cast<int>(std::count_if(
        entries_.begin(), entries_.end(),
        [](const CheckEntry& e) { return !e.pass && !e.formal_odd; }));
}

double ValidationReport::max_abs_err() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, e.abs_err);
    return m;
}

double ValidationReport::max_rel_err() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, e.rel_err);
    return m;
}

void ValidationReport::sort_by_name() {
    std::stable_sort(entries_.begin(), entries_.end(),
                     [](const CheckEntry& a, const CheckEntry& b) { return a.name < b.name; });
}

ValidationReport ValidationReport::filtered(const std::string& name_substring) const {
    ValidationReport out;
    for (const auto& e : entries_)
        if (e.name.find(name_substring) != std::string::npos) out.entries_.push_back(e);
    return out;
}

std::string ValidationReport::to_json(int order, int kappa) const {
    nlohmann::json j;
    j["meta"] = {{"order", order}, {"kappa", kappa}, {"entries", entries_.size()}};
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries_) {
        arr.push_back({{"name", e.name},
                       {"anchor", e.anchor},
                       {"expected", e.expected},
                       {"computed", e.computed},
                       {"abs_err", e.abs_err},
                       {"rel_err", e.rel_err},
                       {"tolerance", e.tolerance},
                       {"pass", e.pass},
                       {"formal_odd", e.formal_odd}});
    }
    j["entries"] = arr;
    j["summary"] = {{"total", entries_.size()},
                    {"failed", failures()},
                    {"failed_hard", hard_failures()}};
    return j.dump(2);
}

ValidationReport ValidationReport::from_json(const std::string& text) {
    ValidationReport r;
    auto j = nlohmann::json::parse(text);
    for (const auto& je : j.at("entries")) {
        CheckEntry e;
        e.name = je.at("name").get<std::string>();
        e.anchor = je.at("anchor").get<std::string>();
        e.expected = je.at("expected").get<double>();
        e.computed = je.at("computed").get<double>();
        e.abs_err = je.at("abs_err").get<double>();
        e.rel_err = je.at("rel_err").get<double>();
        e.tolerance = je.at("tolerance").get<double>();
        e.pass = je.at("pass").get<bool>();
        e.formal_odd = je.at("formal_odd").get<bool>();
        r.entries_.push_back(std::move(e));
    }
    return r;
}

}  // namespace pseudoproc
