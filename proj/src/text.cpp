#include "quenum/text.hpp"

#include <cstdio>

namespace quenum {

std::string format_double(double v) {
  if (v == 0.0) return "0";  // normalize negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_complex(double re, double im) {
  return "(" + format_double(re) + "," + format_double(im) + ")";
}

}  // namespace quenum
