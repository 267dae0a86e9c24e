#ifndef COHWIT_TRACE_CLASS_HPP
#define COHWIT_TRACE_CLASS_HPP

#include <string>
#include <string_view>

namespace cohwit {

/// Prior knowledge about Tr[W]: an exact value r >= 0, strictly positive, or
/// merely nonnegative.
class TraceClass {
public:
    enum class Kind { Fixed, StrictlyPositive, NonNegative };

    static TraceClass fixed(double r);
    static TraceClass strictly_positive() { return TraceClass(Kind::StrictlyPositive, 0.0); }
    static TraceClass nonnegative() { return TraceClass(Kind::NonNegative, 0.0); }

    /// Parses the command-line spelling: "0", "r=<float>", "gt", "geq".
    static TraceClass parse(std::string_view text);

    Kind kind() const { return kind_; }
    /// The fixed trace r; zero for the two open classes.
    double value() const { return value_; }

    bool is_fixed() const { return kind_ == Kind::Fixed; }
    bool is_fixed_zero() const { return kind_ == Kind::Fixed && value_ == 0.0; }
    bool is_fixed_positive() const { return kind_ == Kind::Fixed && value_ > 0.0; }

    /// Inverse of parse(); Fixed(0) prints as "0", other fixed values as "r=<v>".
    std::string to_string() const;

    friend bool operator==(const TraceClass&, const TraceClass&) = default;

private:
    TraceClass(Kind kind, double value) : kind_(kind), value_(value) {}

    Kind kind_;
    double value_;
};

/// The four inequivalent criterion families.
enum class CriterionFamily {
    A,  // Fixed(r), r > 0
    B1, // StrictlyPositive
    B2, // NonNegative
    C,  // Fixed(0)
};

CriterionFamily criterion_family(const TraceClass& x);
const char* to_string(CriterionFamily family);

/// Two criteria are equivalent iff they fall in the same family; positive
/// fixed traces r, s are related by W -> (s/r) W.
bool criteria_equivalent(const TraceClass& x, const TraceClass& y);

/// The set I_x of expectations attainable on incoherent states.
struct IntervalSpec {
    enum class Kind { ClosedSegment, NonNegativeRay, SingletonZero };

    Kind kind;
    double lo = 0.0;
    double hi = 0.0; // meaningful for ClosedSegment only

    friend bool operator==(const IntervalSpec&, const IntervalSpec&) = default;
};

IntervalSpec interval_of(const TraceClass& x);
const char* to_string(IntervalSpec::Kind kind);

} // namespace cohwit

#endif // COHWIT_TRACE_CLASS_HPP
