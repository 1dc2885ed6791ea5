#ifndef GENESYS_ERRORS_HPP
#define GENESYS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace genesys {

struct SourcePos {
    int line = 0;
    int col = 0;
};

// Base for all diagnostics raised by the pipeline. Position is 1-based,
// (0,0) when the error is not tied to a source location.
class SpecError : public std::runtime_error {
public:
    SpecError(std::string kind, const std::string& msg, SourcePos pos = {})
        : std::runtime_error(msg), kind_(std::move(kind)), pos_(pos) {}

    const std::string& kind() const { return kind_; }
    SourcePos pos() const { return pos_; }

private:
    std::string kind_;
    SourcePos pos_;
};

class SyntaxError : public SpecError {
public:
    SyntaxError(const std::string& expected, SourcePos pos)
        : SpecError("SyntaxError", "syntax error: expected " + expected, pos) {}
};

class UnboundIdentifier : public SpecError {
public:
    UnboundIdentifier(const std::string& name, SourcePos pos)
        : SpecError("UnboundIdentifier", "unbound identifier: " + name, pos) {}
};

class DuplicateIdentifier : public SpecError {
public:
    explicit DuplicateIdentifier(const std::string& name, SourcePos pos = {})
        : SpecError("DuplicateIdentifier", "duplicate identifier: " + name, pos) {}
};

class ParallelWriteConflict : public SpecError {
public:
    ParallelWriteConflict(const std::string& var, const std::string& event, SourcePos pos = {})
        : SpecError("ParallelWriteConflict",
                    "variable " + var + " written by two parallel branches in " + event, pos) {}
};

class MissingAssertions : public SpecError {
public:
    MissingAssertions()
        : SpecError("MissingAssertions", "ASSERTIONS clause is mandatory (state predicates)") {}
};

class SortMismatch : public SpecError {
public:
    explicit SortMismatch(const std::string& msg, SourcePos pos = {})
        : SpecError("SortMismatch", msg, pos) {}
};

class NameMismatch : public SpecError {
public:
    NameMismatch(const std::string& expected, const std::string& got)
        : SpecError("NameMismatch", "refinement refines '" + expected +
                                        "' but abstract machine is '" + got + "'") {}
};

class EventSetMismatch : public SpecError {
public:
    explicit EventSetMismatch(const std::string& detail)
        : SpecError("EventSetMismatch", "event sets differ between levels: " + detail) {}
};

class MissingBound : public SpecError {
public:
    explicit MissingBound(const std::string& ident)
        : SpecError("MissingBound", "no finite bound available for identifier: " + ident) {}
};

class IncompleteValuation : public SpecError {
public:
    explicit IncompleteValuation(const std::string& ident)
        : SpecError("IncompleteValuation", "valuation has no value for: " + ident) {}
};

class UnsupportedSubstitution : public SpecError {
public:
    explicit UnsupportedSubstitution(const std::string& what)
        : SpecError("UnsupportedSubstitution", what) {}
};

class FormatError : public SpecError {
public:
    FormatError(const std::string& msg, SourcePos pos = {})
        : SpecError("FormatError", msg, pos) {}
};

class IoError : public SpecError {
public:
    explicit IoError(const std::string& msg) : SpecError("IoError", msg) {}
};

class CoverFailed : public SpecError {
public:
    explicit CoverFailed(const std::string& detail)
        : SpecError("CoverFailed", "state predicates do not cover the invariant: " + detail) {}
};

class NoParent : public SpecError {
public:
    explicit NoParent(const std::string& state)
        : SpecError("NoParent", "no abstract parent provable for state " + state) {}
};

class AmbiguousParent : public SpecError {
public:
    explicit AmbiguousParent(const std::string& state, const std::string& a, const std::string& b)
        : SpecError("AmbiguousParent",
                    "state " + state + " placeable under both " + a + " and " + b) {}
};

class MultipleInitial : public SpecError {
public:
    explicit MultipleInitial(int count)
        : SpecError("MultipleInitial",
                    "AUT output needs a single initial state, got " + std::to_string(count)) {}
};

class StateLimitExceeded : public SpecError {
public:
    explicit StateLimitExceeded(std::size_t limit)
        : SpecError("StateLimitExceeded",
                    "exploration exceeded state limit " + std::to_string(limit)) {}
};

class InvariantViolation : public SpecError {
public:
    InvariantViolation(const std::string& valuation, const std::string& after_event)
        : SpecError("InvariantViolation",
                    "invariant violated at " + valuation + " after event " + after_event) {}
};

class MapNotUnique : public SpecError {
public:
    explicit MapNotUnique(const std::string& valuation)
        : SpecError("MapNotUnique",
                    "valuation maps to zero or several symbolic states: " + valuation) {}
};

class SoundnessViolation : public SpecError {
public:
    explicit SoundnessViolation(const std::string& edge)
        : SpecError("SoundnessViolation", "explicit edge has no symbolic image: " + edge) {}
};

} // namespace genesys

#endif
