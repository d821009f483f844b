// high_precision.hpp: 50-digit real type usable as an Eigen scalar.

#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <Eigen/Core>

namespace bathent {

using HighPrecision =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>, boost::multiprecision::et_off>;

}  // namespace bathent

namespace Eigen {

template <>
struct NumTraits<bathent::HighPrecision> : GenericNumTraits<bathent::HighPrecision> {
    using Real = bathent::HighPrecision;
    using NonInteger = bathent::HighPrecision;
    using Literal = bathent::HighPrecision;
    using Nested = bathent::HighPrecision;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 16,
        MulCost = 32
    };
    static Real dummy_precision() { return Real(1e-40); }
    static int digits10() { return 50; }
};

}  // namespace Eigen
