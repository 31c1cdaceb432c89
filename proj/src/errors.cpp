#include "egomap/errors.hpp"

namespace egomap {

namespace {

std::string join_ids(std::string head, const std::vector<std::string>& ids) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) head += ", ";
        head += ids[i];
    }
    return head;
}

}  // namespace

std::string MissingMembersError::join(std::string head, const std::vector<std::string>& ids) {
    return join_ids(std::move(head), ids);
}

std::string UnknownRowsError::join(std::string head, const std::vector<std::string>& ids) {
    return join_ids(std::move(head), ids);
}

std::string BadCodeError::describe(const std::vector<Entry>& entries) {
    std::string message = "coding sheet has invalid codes:";
    for (const auto& entry : entries) {
        message += " [row " + std::to_string(entry.row) + ", column " + entry.column +
                   ": '" + entry.token + "']";
    }
    return message;
}

}  // namespace egomap
