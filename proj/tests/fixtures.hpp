#pragma once

#include "torgamma/fan.hpp"

namespace torgamma {

// height-1 points (0,1), (1,1), (3,1); fine triangulation splits at (1,1)
inline FanData fine_data() {
  FanData d;
  d.rank = 2;
  d.points = {{0, 1}, {1, 1}, {3, 1}};
  d.max_simplices = {{0, 1}, {1, 2}};
  d.weights = QVec{1, 0, 1};
  return d;
}

// same cone triangulated by the single simplex on the boundary rays
inline FanData coarse_data() {
  FanData d;
  d.rank = 2;
  d.points = {{0, 1}, {1, 1}, {3, 1}};
  d.max_simplices = {{0, 2}};
  return d;
}

}  // namespace torgamma
