#pragma once

#include <stdexcept>
#include <string>

namespace prymab {

/// Input data failed a structural check (bad matrix, bad file, bad bounds).
/// Mapped to exit code 2 by the CLI.
class validation_error : public std::runtime_error {
public:
    enum class kind {
        zero_column,
        column_sum_nonzero,
        too_few_points,
        mixed_ambient,
        bound_exceeded,
        characters_do_not_cancel,
        duplicate_branch_points,
        subgroup_not_contained,
        parse,
    };

    validation_error(kind k, std::string msg, long index = -1)
        : std::runtime_error(std::move(msg)), what_kind(k), index(index) {}

    kind what_kind;
    long index; // offending column / line, -1 if not applicable
};

/// An internal consistency check failed: two independent computations of the
/// same quantity disagree, or a quantity left its proven range.  Always a bug.
/// Mapped to exit code 1 by the CLI.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace prymab
