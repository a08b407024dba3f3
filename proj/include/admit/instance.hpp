#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace admit {

/// Raised for malformed documents and for instances that break a data-model rule.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an algorithm or model builder is handed an instance carrying a
/// feature it does not support (ties, paired applications, ...).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct College {
    std::string id;
    int upper = 1;
    int lower = 0;

    bool operator==(const College&) const = default;
};

/// One entry of an applicant's preference list. A paired entry targets two
/// distinct colleges and is admitted at both or at neither.
struct Application {
    int applicant = 0;
    int rank = 1;
    int college = 0;
    int second = -1;        // second college of a paired entry, -1 for simple
    int score = 0;          // score at `college`
    int second_score = 0;   // score at `second`

    bool paired() const { return second >= 0; }
    bool targets(int j) const { return college == j || second == j; }
    int score_at(int j) const { return j == college ? score : second_score; }

    bool operator==(const Application&) const = default;
};

struct QuotaSet {
    std::string id;
    std::vector<int> members;
    int upper = 0;

    bool operator==(const QuotaSet&) const = default;
};

struct LowerGroup {
    std::string id;
    std::vector<int> members;
    int lower = 1;

    bool operator==(const LowerGroup&) const = default;
};

/// A college admissions market. Applications are stored grouped by applicant
/// in document order; `lists()` gives each applicant's entries sorted by rank.
///
/// Instances are immutable once `finalize()` has run (the parser and the
/// generator both call it), so one instance may be shared by concurrent solves.
class Instance {
public:
    int max_score = 0;
    std::vector<std::string> applicants;
    std::vector<College> colleges;
    std::vector<Application> applications;
    std::vector<QuotaSet> common_quotas;
    std::vector<LowerGroup> lower_groups;

    /// Checks every data-model rule and builds the lookup tables. Throws
    /// ValidationError naming the broken rule.
    void finalize();

    int num_applicants() const { return static_cast<int>(applicants.size()); }
    int num_colleges() const { return static_cast<int>(colleges.size()); }
    int num_applications() const { return static_cast<int>(applications.size()); }

    /// Application indices of applicant i, most preferred first.
    const std::vector<int>& list(int i) const { return lists_[static_cast<std::size_t>(i)]; }
    const std::vector<std::vector<int>>& lists() const { return lists_; }

    /// Application indices whose target includes college j (simple or paired).
    const std::vector<int>& applications_to(int j) const { return by_college_[static_cast<std::size_t>(j)]; }

    /// Score of applicant i at college j, or -1 when i never applies to j.
    int score(int i, int j) const;

    /// Position of application e in its applicant's list (0 = first choice).
    int position(int e) const { return position_[static_cast<std::size_t>(e)]; }

    bool has_paired() const;
    bool has_lower_quotas() const;

    /// True when two distinct applicants share a score at some college, or at
    /// two colleges of one common-quota set.
    bool has_ties() const;

    /// Number of quota sets containing college j, counting the implicit
    /// singleton {c_j}.
    int sets_containing(int j) const;

    int college_index(const std::string& id) const;

    bool operator==(const Instance& other) const;

private:
    std::vector<std::vector<int>> lists_;
    std::vector<std::vector<int>> by_college_;
    std::vector<int> position_;
    std::vector<int> score_table_;
};

/// True iff any two quota sets are disjoint or ordered by inclusion. The
/// implicit singletons never break the property, so only explicit sets matter.
bool is_nested(const Instance& inst);

/// Human-readable label for an application, e.g. "a1->c2" or "a1->(c2,c3)".
std::string describe(const Instance& inst, int application);

}  // namespace admit
