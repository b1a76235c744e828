#include "afst/eval/render.hpp"

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include <cmath>
#include <stdexcept>

#include "afst/sim/kinematics.hpp"

namespace afst::eval {

namespace {

cv::Point to_px(const sim::WorldMap& world, int scale, double x, double y) {
  // Image y runs downward; world y upward.
  const int px = static_cast<int>(std::lround(x / world.resolution * scale));
  const int py = static_cast<int>(
      std::lround((world.rows - y / world.resolution) * scale));
  return {px, py};
}

void draw_box(cv::Mat& img, const sim::WorldMap& world, int scale, double x,
              double y, double half, const cv::Scalar& color) {
  cv::rectangle(img, to_px(world, scale, x - half, y + half),
                to_px(world, scale, x + half, y - half), color, 2, cv::LINE_8);
}

}  // namespace

void render_trajectory(const sim::WorldMap& world, const sim::Trajectory& rows,
                       const std::string& out_path, const RenderOptions& options) {
  const int s = options.scale;
  cv::Mat base(world.rows, world.cols, CV_8UC3);
  for (int iy = 0; iy < world.rows; ++iy)
    for (int ix = 0; ix < world.cols; ++ix) {
      // Row 0 of the image is the top of the world.
      const bool occ = world.occupied(ix, world.rows - 1 - iy);
      base.at<cv::Vec3b>(iy, ix) =
          occ ? cv::Vec3b(40, 40, 40) : cv::Vec3b(255, 255, 255);
    }
  cv::Mat img;
  cv::resize(base, img, {}, s, s, cv::INTER_NEAREST);

  const cv::Scalar path_color(0, 220, 255);   // yellow (BGR)
  const cv::Scalar dot_color(0, 160, 230);
  for (const auto& row : rows) {
    smdp::Pose p{row.x, row.y, row.theta};
    const smdp::ExecutableAction act{row.v, row.omega, row.d};
    cv::Point prev = to_px(world, s, p.x, p.y);
    const int n_seg = std::max(2, static_cast<int>(std::ceil(row.tau / 0.02)));
    for (int i = 1; i <= n_seg; ++i) {
      const smdp::Pose q =
          sim::propagate_arc(p, act, row.tau * i / n_seg);
      const cv::Point cur = to_px(world, s, q.x, q.y);
      cv::line(img, prev, cur, path_color, 2, cv::LINE_8);
      prev = cur;
    }
    cv::circle(img, to_px(world, s, row.x, row.y), 3, dot_color, cv::FILLED,
               cv::LINE_8);
  }

  auto start = options.start;
  if (!start && !rows.empty())
    start = smdp::Pose{rows.front().x, rows.front().y, rows.front().theta};
  if (start)
    draw_box(img, world, s, start->x, start->y, 0.15, cv::Scalar(60, 180, 60));
  if (options.goal)
    draw_box(img, world, s, options.goal->first, options.goal->second, 0.15,
             cv::Scalar(200, 80, 40));

  if (!cv::imwrite(out_path, img))
    throw std::runtime_error("render: cannot write " + out_path);
}

}  // namespace afst::eval
