#include "cilab/boxes.hpp"

namespace cilab {

BoxUnion inscribed_disc_boxes(double radius, int columns) {
  // Symmetric column decomposition: each column uses the height of its
  // outer edge so every box is inside the disc; columns are disjoint.
  std::vector<Box> boxes;
  const double w = 2.0 * radius / columns;
  for (int k = 0; k < columns; ++k) {
    double x0 = -radius + k * w;
    double x1 = x0 + w;
    double xe = std::max(std::fabs(x0), std::fabs(x1));
    double h2 = radius * radius - xe * xe;
    if (h2 <= 0) continue;
    double h = std::sqrt(h2);
    boxes.push_back(make_box2(x0, x1, -h, h));
  }
  return BoxUnion(std::move(boxes));
}

}  // namespace cilab
