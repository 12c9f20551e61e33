#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace scarf {

// Expression templates off: values get stored in containers and compared a lot,
// and ET proxies captured by `auto` are a classic footgun.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline std::string to_string(const Rational &r) { return r.str(); }

} // namespace scarf
