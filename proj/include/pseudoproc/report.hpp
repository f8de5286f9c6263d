#pragma once

#include <string>
#include <vector>

namespace pseudoproc {

// One named numerical check: an expected value, a computed value, and the
// tolerance it was held to. Checks derived from formally-computed odd-order
// results carry formal_odd = true and do not count as hard failures.
struct CheckEntry {
    std::string name;
    std::string anchor;  // identity family, or "plumbing" for infrastructure checks
    double expected = 0.0;
    double computed = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool formal_odd = false;
};

class ValidationReport {
public:
    void add(CheckEntry entry);
    void merge(const ValidationReport& other);

    // Builds the entry from a complex-valued comparison collapsed to
    // magnitudes; pass iff abs_err <= tolerance.
    void check_abs(const std::string& name, const std::string& anchor,
                   double expected, double computed, double tolerance,
                   bool formal_odd = false);
    void check_rel(const std::string& name, const std::string& anchor,
                   double expected, double computed, double tolerance,
                   bool formal_odd = false);

    const std::vector<CheckEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    int failures() const;         // all failed entries
    int hard_failures() const;    // failed entries that are not formal_odd
    double max_abs_err() const;
    double max_rel_err() const;
    bool all_passed() const { return failures() == 0; }

    void sort_by_name();
    ValidationReport filtered(const std::string& name_substring) const;

    std::string to_json(int order = 0, int kappa = 0) const;
    static ValidationReport from_json(const std::string& text);

private:
    std::vector<CheckEntry> entries_;
};

}  // namespace pseudoproc
