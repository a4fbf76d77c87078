#include "revolve/error.hpp"

#include <sstream>

namespace revolve {

namespace {

std::string syntax_message(std::size_t offset, const std::vector<std::string>& expected,
                           const std::string& found) {
    std::ostringstream os;
    os << "syntax error at offset " << offset << ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) os << (i + 1 == expected.size() ? " or " : ", ");
        os << expected[i];
    }
    os << ", found " << found;
    return os.str();
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
    : InputError(syntax_message(offset, expected, found)), offset_(offset), expected_(std::move(expected)) {}

UnknownIdentifier::UnknownIdentifier(std::string name, std::size_t offset)
    : InputError("unknown identifier '" + name + "' at offset " + std::to_string(offset)),
      name_(std::move(name)),
      offset_(offset) {}

UnboundIdentifier::UnboundIdentifier(std::string name)
    : InputError("identifier '" + name + "' has no bound value"), name_(std::move(name)) {}

NonFiniteEvaluation::NonFiniteEvaluation(double where)
    : NumericError("non-finite function value at " + std::to_string(where)), where_(where) {}

}  // namespace revolve
