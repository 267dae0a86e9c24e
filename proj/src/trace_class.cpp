#include "cohwit/trace_class.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "cohwit/errors.hpp"

namespace cohwit {

TraceClass TraceClass::fixed(double r)
{
    if (!std::isfinite(r) || r < 0.0)
        throw Error(ErrorKind::InvalidArgument, "fixed trace must be a finite value >= 0");
    return TraceClass(Kind::Fixed, r);
}

TraceClass TraceClass::parse(std::string_view text)
{
    if (text == "gt")
        return strictly_positive();
    if (text == "geq")
        return nonnegative();
    if (text == "0")
        return fixed(0.0);
    if (text.size() > 2 && text.substr(0, 2) == "r=") {
        const std::string_view number = text.substr(2);
        double r = 0.0;
        const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), r);
        if (ec == std::errc() && ptr == number.data() + number.size())
            return fixed(r);
    }
    throw Error(ErrorKind::InvalidArgument,
                "trace class must be one of 0, r=<float>, gt, geq; got '" + std::string(text) + "'");
}

std::string TraceClass::to_string() const
{
    switch (kind_) {
    case Kind::StrictlyPositive: return "gt";
    case Kind::NonNegative: return "geq";
    case Kind::Fixed: break;
    }
    if (value_ == 0.0)
        return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value_);
    return "r=" + std::string(buf, res.ptr);
}

CriterionFamily criterion_family(const TraceClass& x)
{
    switch (x.kind()) {
    case TraceClass::Kind::StrictlyPositive: return CriterionFamily::B1;
    case TraceClass::Kind::NonNegative: return CriterionFamily::B2;
    case TraceClass::Kind::Fixed: break;
    }
    return x.value() > 0.0 ? CriterionFamily::A : CriterionFamily::C;
}

const char* to_string(CriterionFamily family)
{
    switch (family) {
    case CriterionFamily::A: return "A";
    case CriterionFamily::B1: return "B1";
    case CriterionFamily::B2: return "B2";
    case CriterionFamily::C: return "C";
    }
    return "?";
}

bool criteria_equivalent(const TraceClass& x, const TraceClass& y)
{
    return criterion_family(x) == criterion_family(y);
}

IntervalSpec interval_of(const TraceClass& x)
{
    switch (criterion_family(x)) {
    case CriterionFamily::A: return {IntervalSpec::Kind::ClosedSegment, 0.0, x.value()};
    case CriterionFamily::B1:
    case CriterionFamily::B2: return {IntervalSpec::Kind::NonNegativeRay, 0.0, 0.0};
    case CriterionFamily::C: return {IntervalSpec::Kind::SingletonZero, 0.0, 0.0};
    }
    return {IntervalSpec::Kind::SingletonZero, 0.0, 0.0};
}

const char* to_string(IntervalSpec::Kind kind)
{
    switch (kind) {
    case IntervalSpec::Kind::ClosedSegment: return "closed_segment";
    case IntervalSpec::Kind::NonNegativeRay: return "nonnegative_ray";
    case IntervalSpec::Kind::SingletonZero: return "singleton_zero";
    }
    return "?";
}

} // namespace cohwit
