#include "afst/sim/trajectory.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace afst::sim {

namespace {
StepEvent event_from(const std::string& s) {
  if (s == "none") return StepEvent::None;
  if (s == "arrived") return StepEvent::Arrived;
  if (s == "collided") return StepEvent::Collided;
  throw std::runtime_error("trajectory: unknown event '" + s + "'");
}
}  // namespace

void write_trajectory(const Trajectory& rows, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t,x,y,theta,v,omega,d,tau,reward,event\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n",
                  r.t, r.x, r.y, r.theta, r.v, r.omega, r.d, r.tau, r.reward,
                  to_string(r.event));
    out << buf;
  }
}

Trajectory read_trajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("trajectory: empty file " + path);
  Trajectory rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    TrajectoryRow r;
    double* nums[] = {&r.t, &r.x,     &r.y, &r.theta, &r.v,
                      &r.omega, &r.d, &r.tau, &r.reward};
    for (double* dst : nums) {
      if (!std::getline(ss, field, ','))
        throw std::runtime_error("trajectory: short row in " + path);
      *dst = std::stod(field);
    }
    if (!std::getline(ss, field, ','))
      throw std::runtime_error("trajectory: missing event in " + path);
    r.event = event_from(field);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace afst::sim
