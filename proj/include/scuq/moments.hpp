#pragma once

namespace scuq {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

}  // namespace scuq
