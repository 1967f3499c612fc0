#pragma once

#include <stdexcept>
#include <string>

namespace parahoric {

/// Malformed text input: type strings, cycle notation, JSON documents.
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a domain invariant or an operation's
/// precondition. The message names the offending field or value.
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed; indicates a bug or a violated
/// precondition that slipped past validation.
class consistency_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace parahoric
