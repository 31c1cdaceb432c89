#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace egomap {

// Process exit codes used by the CLI. Every failure mode maps to one
// stable code so scripts can branch on them.
enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_unknown_handle = 2,
    exit_budget_exhausted = 3,
    exit_schema_violation = 4,
    exit_missing_members = 5,
    exit_unknown_rows = 6,
    exit_bad_code = 7,
    exit_key_mismatch = 8,
    exit_invalid_spec = 9,
    exit_io_error = 10,
    exit_empty_graph = 11,
    exit_inconsistent_inputs = 12,
    exit_unencodable_category = 13,
};

class Error : public std::runtime_error {
public:
    Error(std::string message, int exit_code)
        : std::runtime_error(std::move(message)), exit_code_(exit_code) {}
    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

struct UnknownHandleError : Error {
    explicit UnknownHandleError(const std::string& handle)
        : Error("unknown handle: " + handle, exit_unknown_handle) {}
};

// Archive/file contents violate a documented invariant. Message names the
// invariant and the offending id.
struct SchemaViolationError : Error {
    explicit SchemaViolationError(const std::string& what)
        : Error("schema violation: " + what, exit_schema_violation) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error("io error: " + what, exit_io_error) {}
};

// A member's list is unreadable (protected/suspended account). Raised by
// list providers; fetch_ego converts it into a flagged empty list.
struct ProtectedAccountError : Error {
    explicit ProtectedAccountError(const std::string& id)
        : Error("protected account: " + id, exit_io_error) {}
};

// Transient provider failure (partial page, 5xx, timeout). fetch_ego
// retries the same page instead of truncating the list.
struct TransientFetchError : Error {
    explicit TransientFetchError(const std::string& what)
        : Error("transient fetch error: " + what, exit_io_error) {}
};

struct InvalidSpecError : Error {
    explicit InvalidSpecError(const std::string& what)
        : Error("invalid spec: " + what, exit_invalid_spec) {}
};

struct MissingMembersError : Error {
    explicit MissingMembersError(std::vector<std::string> ids_in)
        : Error(join("coding sheet is missing members: ", ids_in), exit_missing_members),
          ids(std::move(ids_in)) {}
    std::vector<std::string> ids;

private:
    static std::string join(std::string head, const std::vector<std::string>& ids);
};

struct UnknownRowsError : Error {
    explicit UnknownRowsError(std::vector<std::string> ids_in)
        : Error(join("coding sheet has rows outside the community: ", ids_in),
                exit_unknown_rows),
          ids(std::move(ids_in)) {}
    std::vector<std::string> ids;

private:
    static std::string join(std::string head, const std::vector<std::string>& ids);
};

struct BadCodeError : Error {
    struct Entry {
        std::size_t row;  // 1-based data row number (header excluded)
        std::string column;
        std::string token;
    };
    explicit BadCodeError(std::vector<Entry> entries_in)
        : Error(describe(entries_in), exit_bad_code), entries(std::move(entries_in)) {}
    std::vector<Entry> entries;

private:
    static std::string describe(const std::vector<Entry>& entries);
};

struct KeyMismatchError : Error {
    explicit KeyMismatchError(const std::string& what)
        : Error("coding keys do not match graph nodes: " + what, exit_key_mismatch) {}
};

struct EmptyGraphError : Error {
    explicit EmptyGraphError(const std::string& what)
        : Error("operation undefined on empty graph: " + what, exit_empty_graph) {}
};

struct InconsistentInputsError : Error {
    explicit InconsistentInputsError(const std::string& what)
        : Error("inconsistent inputs: " + what, exit_inconsistent_inputs) {}
};

struct UnencodableCategoryError : Error {
    explicit UnencodableCategoryError(const std::string& what)
        : Error("unencodable category: " + what, exit_unencodable_category) {}
};

}  // namespace egomap
