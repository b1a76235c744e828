#include "afst/eval/scenario.hpp"

#include <cmath>
#include <deque>
#include <fstream>
#include <stdexcept>

#include "afst/util/rng.hpp"

namespace afst::eval {

const char* to_string(Family f) {
  switch (f) {
    case Family::Sparse: return "sparse";
    case Family::Dense: return "dense";
    case Family::Spiral: return "spiral";
    case Family::Zigzag: return "zigzag";
    case Family::Hybrid: return "hybrid";
    case Family::Image: return "image";
  }
  return "?";
}

Family family_from(const std::string& name) {
  if (name == "sparse") return Family::Sparse;
  if (name == "dense") return Family::Dense;
  if (name == "spiral") return Family::Spiral;
  if (name == "zigzag") return Family::Zigzag;
  if (name == "hybrid") return Family::Hybrid;
  if (name == "image") return Family::Image;
  throw std::invalid_argument("unknown scenario family: " + name);
}

ScenarioSpec ScenarioSpec::preset(const std::string& name) {
  ScenarioSpec s;
  if (name == "sparse") {
    s.family = Family::Sparse;
    s.n_obstacles = 6;
    s.size_lo = 0.5;
    s.size_hi = 2.0;
  } else if (name == "dense") {
    s.family = Family::Dense;
    s.n_obstacles = 32;
    s.size_lo = 0.3;
    s.size_hi = 0.6;
  } else if (name == "hybrid") {
    // Dense clutter plus zigzag-style wall segments, random placements.
    s.family = Family::Hybrid;
    s.n_obstacles = 26;
    s.size_lo = 0.3;
    s.size_hi = 0.6;
    s.n_walls = 6;
  } else if (name == "spiral" || name == "zigzag") {
    s.family = family_from(name);
    s.extent_x = s.extent_y = 6.0;
  } else if (name == "smoke") {
    // Simplified training world: a 6x6 m sparse field with 3 obstacles.
    s.family = Family::Sparse;
    s.extent_x = s.extent_y = 6.0;
    s.n_obstacles = 3;
    s.size_lo = 0.5;
    s.size_hi = 1.5;
  } else {
    throw std::invalid_argument("unknown scenario preset: " + name);
  }
  return s;
}

void to_json(nlohmann::json& j, const ScenarioSpec& spec) {
  j = nlohmann::json{
      {"family", to_string(spec.family)},
      {"extent", {spec.extent_x, spec.extent_y}},
      {"resolution", spec.resolution},
      {"obstacles",
       {{"count", spec.n_obstacles},
        {"size_lo", spec.size_lo},
        {"size_hi", spec.size_hi},
        {"walls", spec.n_walls},
        {"wall_len_lo", spec.wall_len_lo},
        {"wall_len_hi", spec.wall_len_hi},
        {"wall_thickness", spec.wall_thickness}}},
      {"min_separation", spec.min_separation},
      {"spawn_clearance", spec.spawn_clearance}};
  if (!spec.start_region.empty())
    j["start_region"] = {spec.start_region.x0, spec.start_region.y0,
                         spec.start_region.x1, spec.start_region.y1};
  if (!spec.goal_region.empty())
    j["goal_region"] = {spec.goal_region.x0, spec.goal_region.y0,
                        spec.goal_region.x1, spec.goal_region.y1};
  if (spec.fixed_start)
    j["start"] = {spec.fixed_start->x, spec.fixed_start->y, spec.fixed_start->theta};
  if (spec.fixed_goal) j["goal"] = {spec.fixed_goal->first, spec.fixed_goal->second};
  if (!spec.image_path.empty()) j["image"] = spec.image_path;
}

void from_json(const nlohmann::json& j, ScenarioSpec& spec) {
  spec = ScenarioSpec{};
  spec.family = family_from(j.at("family").get<std::string>());
  if (spec.family == Family::Spiral || spec.family == Family::Zigzag)
    spec.extent_x = spec.extent_y = 6.0;
  if (j.contains("extent")) {
    spec.extent_x = j["extent"][0].get<double>();
    spec.extent_y = j["extent"][1].get<double>();
  }
  if (j.contains("resolution")) spec.resolution = j["resolution"].get<double>();
  if (j.contains("obstacles")) {
    const auto& o = j["obstacles"];
    if (o.contains("count")) spec.n_obstacles = o["count"].get<int>();
    if (o.contains("size_lo")) spec.size_lo = o["size_lo"].get<double>();
    if (o.contains("size_hi")) spec.size_hi = o["size_hi"].get<double>();
    if (o.contains("walls")) spec.n_walls = o["walls"].get<int>();
    if (o.contains("wall_len_lo")) spec.wall_len_lo = o["wall_len_lo"].get<double>();
    if (o.contains("wall_len_hi")) spec.wall_len_hi = o["wall_len_hi"].get<double>();
    if (o.contains("wall_thickness"))
      spec.wall_thickness = o["wall_thickness"].get<double>();
  }
  if (j.contains("min_separation"))
    spec.min_separation = j["min_separation"].get<double>();
  if (j.contains("spawn_clearance"))
    spec.spawn_clearance = j["spawn_clearance"].get<double>();
  auto region = [](const nlohmann::json& r) {
    return Region{r[0].get<double>(), r[1].get<double>(), r[2].get<double>(),
                  r[3].get<double>()};
  };
  if (j.contains("start_region")) spec.start_region = region(j["start_region"]);
  if (j.contains("goal_region")) spec.goal_region = region(j["goal_region"]);
  if (j.contains("start")) {
    const auto& s = j["start"];
    spec.fixed_start = smdp::Pose::make(s[0].get<double>(), s[1].get<double>(),
                                        s.size() > 2 ? s[2].get<double>() : 0.0);
  }
  if (j.contains("goal"))
    spec.fixed_goal = std::make_pair(j["goal"][0].get<double>(),
                                     j["goal"][1].get<double>());
  if (j.contains("image")) spec.image_path = j["image"].get<std::string>();
}

ScenarioSpec load_scenario_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path);
  nlohmann::json j;
  in >> j;
  return j.get<ScenarioSpec>();
}

void save_scenario_spec(const ScenarioSpec& spec, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write scenario file " + path);
  out << nlohmann::json(spec).dump(2) << "\n";
}

namespace {

// One-cell boundary wall so lidar and flood fill see a closed arena.
void add_border(sim::WorldMap& w) {
  for (int ix = 0; ix < w.cols; ++ix) {
    w.set_occupied(ix, 0);
    w.set_occupied(ix, w.rows - 1);
  }
  for (int iy = 0; iy < w.rows; ++iy) {
    w.set_occupied(0, iy);
    w.set_occupied(w.cols - 1, iy);
  }
}

}  // namespace

// Single-entry rectangular spiral: two nested square rings with entry
// gaps on opposite sides, goal chamber in the middle, and five small
// boxes hugging the corridor walls.
sim::WorldMap spiral_world(double resolution) {
  sim::WorldMap w = sim::WorldMap::blank(6.0, 6.0, resolution);
  add_border(w);
  // Outer ring [1,5]^2, entry gap in the bottom wall at x in [3.8, 4.8].
  w.fill_rect(1.0, 1.0, 3.8, 1.1);
  w.fill_rect(4.8, 1.0, 5.0, 1.1);
  w.fill_rect(4.9, 1.0, 5.0, 5.0);
  w.fill_rect(1.0, 4.9, 5.0, 5.0);
  w.fill_rect(1.0, 1.0, 1.1, 5.0);
  // Inner ring [2,4]^2, entry gap in the top wall at x in [2.2, 3.2].
  w.fill_rect(2.0, 2.0, 4.0, 2.1);
  w.fill_rect(3.9, 2.0, 4.0, 4.0);
  w.fill_rect(2.0, 3.9, 2.2, 4.0);
  w.fill_rect(3.2, 3.9, 4.0, 4.0);
  w.fill_rect(2.0, 2.0, 2.1, 4.0);
  // Scattered clutter, kept against walls so corridors stay passable.
  w.fill_rect(1.9, 0.08, 2.1, 0.28);
  w.fill_rect(5.72, 3.0, 5.92, 3.2);
  w.fill_rect(3.0, 1.12, 3.2, 1.32);
  w.fill_rect(1.12, 4.3, 1.32, 4.5);
  w.fill_rect(3.3, 2.8, 3.5, 3.0);
  return w;
}

// Three-fold switchback: horizontal baffles with gaps on alternating
// sides, plus five wall-hugging boxes.
sim::WorldMap zigzag_world(double resolution) {
  sim::WorldMap w = sim::WorldMap::blank(6.0, 6.0, resolution);
  add_border(w);
  w.fill_rect(0.0, 1.45, 4.95, 1.55);   // gap on the right
  w.fill_rect(1.05, 2.95, 6.0, 3.05);   // gap on the left
  w.fill_rect(0.0, 4.45, 4.95, 4.55);   // gap on the right
  w.fill_rect(2.5, 0.08, 2.7, 0.28);
  w.fill_rect(3.0, 2.73, 3.2, 2.93);
  w.fill_rect(1.5, 3.6, 1.7, 3.8);
  w.fill_rect(4.0, 5.0, 4.2, 5.2);
  w.fill_rect(5.72, 1.9, 5.92, 2.1);
  return w;
}

bool path_exists(const sim::WorldMap& world, double radius, double sx, double sy,
                 double gx, double gy) {
  const int cols = world.cols, rows = world.rows;
  // A cell is traversable if the robot disc centered on the cell center
  // fits. Start/goal map to their containing cells.
  auto free_at = [&](int ix, int iy) {
    const double cx = (ix + 0.5) * world.resolution;
    const double cy = (iy + 0.5) * world.resolution;
    return !sim::disc_collides(world, cx, cy, radius);
  };
  const int sxi = world.cell_of(sx), syi = world.cell_of(sy);
  const int gxi = world.cell_of(gx), gyi = world.cell_of(gy);
  if (!world.in_bounds(sxi, syi) || !world.in_bounds(gxi, gyi)) return false;
  if (!free_at(sxi, syi) || !free_at(gxi, gyi)) return false;

  std::vector<std::uint8_t> seen(static_cast<std::size_t>(cols) * rows, 0);
  std::deque<std::pair<int, int>> queue;
  queue.emplace_back(sxi, syi);
  seen[static_cast<std::size_t>(syi) * cols + sxi] = 1;
  while (!queue.empty()) {
    const auto [ix, iy] = queue.front();
    queue.pop_front();
    if (ix == gxi && iy == gyi) return true;
    const int nx[4] = {ix + 1, ix - 1, ix, ix};
    const int ny[4] = {iy, iy, iy + 1, iy - 1};
    for (int k = 0; k < 4; ++k) {
      if (!world.in_bounds(nx[k], ny[k])) continue;
      auto& mark = seen[static_cast<std::size_t>(ny[k]) * cols + nx[k]];
      if (mark) continue;
      mark = 1;
      if (free_at(nx[k], ny[k])) queue.emplace_back(nx[k], ny[k]);
    }
  }
  return false;
}

namespace {

struct FixedLayout {
  sim::WorldMap world;
  smdp::Pose start;
  double goal_x, goal_y;
};

FixedLayout fixed_layout(const ScenarioSpec& spec) {
  switch (spec.family) {
    case Family::Spiral:
      return {spiral_world(spec.resolution), smdp::Pose{0.5, 0.5, 0.0}, 3.0, 3.0};
    case Family::Zigzag:
      return {zigzag_world(spec.resolution), smdp::Pose{0.5, 0.5, 0.0}, 0.5, 5.5};
    case Family::Image: {
      if (spec.image_path.empty())
        throw std::invalid_argument("image scenario needs an image path");
      if (!spec.fixed_start || !spec.fixed_goal)
        throw std::invalid_argument("image scenario needs fixed start and goal");
      return {sim::load_world(spec.image_path, spec.resolution), *spec.fixed_start,
              spec.fixed_goal->first, spec.fixed_goal->second};
    }
    default:
      throw std::logic_error("fixed_layout: not a fixed family");
  }
}

}  // namespace

Scenario generate_scenario(const ScenarioSpec& spec, double robot_radius,
                           std::uint64_t seed) {
  const bool fixed = spec.family == Family::Spiral ||
                     spec.family == Family::Zigzag || spec.family == Family::Image;
  if (fixed) {
    FixedLayout lay = fixed_layout(spec);
    const smdp::Pose start = spec.fixed_start.value_or(lay.start);
    const double gx = spec.fixed_goal ? spec.fixed_goal->first : lay.goal_x;
    const double gy = spec.fixed_goal ? spec.fixed_goal->second : lay.goal_y;
    if (sim::disc_collides(lay.world, start.x, start.y, robot_radius))
      throw std::runtime_error("scenario: fixed start is in collision");
    if (!path_exists(lay.world, robot_radius, start.x, start.y, gx, gy))
      throw std::runtime_error("scenario: fixed layout is not connected");
    return {std::move(lay.world), start, gx, gy};
  }

  util::Rng rng = util::make_rng(seed, 7);
  const double margin = robot_radius + spec.spawn_clearance;
  Region sr = spec.start_region, gr = spec.goal_region;
  if (sr.empty()) sr = {margin + spec.resolution, margin + spec.resolution,
                        spec.extent_x - margin - spec.resolution,
                        spec.extent_y - margin - spec.resolution};
  if (gr.empty()) gr = sr;

  for (int attempt = 0; attempt < 500; ++attempt) {
    sim::WorldMap world =
        sim::WorldMap::blank(spec.extent_x, spec.extent_y, spec.resolution);
    for (int ix = 0; ix < world.cols; ++ix) {
      world.set_occupied(ix, 0);
      world.set_occupied(ix, world.rows - 1);
    }
    for (int iy = 0; iy < world.rows; ++iy) {
      world.set_occupied(0, iy);
      world.set_occupied(world.cols - 1, iy);
    }

    const double sx = util::uniform(rng, sr.x0, sr.x1);
    const double sy = util::uniform(rng, sr.y0, sr.y1);
    const double stheta = util::uniform(rng, -M_PI, M_PI);
    const double gx = util::uniform(rng, gr.x0, gr.x1);
    const double gy = util::uniform(rng, gr.y0, gr.y1);
    if (std::hypot(gx - sx, gy - sy) < spec.min_separation) continue;

    // Obstacles keep out of the start/goal clearance discs.
    auto clear_of_spawns = [&](double x0, double y0, double x1, double y1) {
      auto dist2_rect = [&](double px, double py) {
        const double dx = std::max({x0 - px, 0.0, px - x1});
        const double dy = std::max({y0 - py, 0.0, py - y1});
        return dx * dx + dy * dy;
      };
      const double keep = margin + 0.05;
      return dist2_rect(sx, sy) > keep * keep && dist2_rect(gx, gy) > keep * keep;
    };

    bool placed_all = true;
    for (int i = 0; i < spec.n_walls && placed_all; ++i) {
      bool ok = false;
      for (int t = 0; t < 50 && !ok; ++t) {
        const double len = util::uniform(rng, spec.wall_len_lo, spec.wall_len_hi);
        const bool horizontal = util::uniform01(rng) < 0.5;
        const double wx = horizontal ? len : spec.wall_thickness;
        const double wy = horizontal ? spec.wall_thickness : len;
        const double x0 = util::uniform(rng, 0.1, spec.extent_x - wx - 0.1);
        const double y0 = util::uniform(rng, 0.1, spec.extent_y - wy - 0.1);
        if (!clear_of_spawns(x0, y0, x0 + wx, y0 + wy)) continue;
        world.fill_rect(x0, y0, x0 + wx, y0 + wy);
        ok = true;
      }
      placed_all = ok;
    }
    for (int i = 0; i < spec.n_obstacles && placed_all; ++i) {
      bool ok = false;
      for (int t = 0; t < 50 && !ok; ++t) {
        const double sx_ob = util::uniform(rng, spec.size_lo, spec.size_hi);
        const double sy_ob = util::uniform(rng, spec.size_lo, spec.size_hi);
        const double x0 = util::uniform(rng, 0.1, spec.extent_x - sx_ob - 0.1);
        const double y0 = util::uniform(rng, 0.1, spec.extent_y - sy_ob - 0.1);
        if (!clear_of_spawns(x0, y0, x0 + sx_ob, y0 + sy_ob)) continue;
        if (util::uniform01(rng) < 0.5) {
          world.fill_rect(x0, y0, x0 + sx_ob, y0 + sy_ob);
        } else {
          const double r = 0.5 * std::min(sx_ob, sy_ob);
          world.fill_disc(x0 + 0.5 * sx_ob, y0 + 0.5 * sy_ob, r);
        }
        ok = true;
      }
      placed_all = ok;
    }
    if (!placed_all) continue;

    if (sim::disc_collides(world, sx, sy, robot_radius + spec.spawn_clearance) ||
        sim::disc_collides(world, gx, gy, robot_radius + spec.spawn_clearance))
      continue;
    if (!path_exists(world, robot_radius, sx, sy, gx, gy)) continue;

    return {std::move(world), smdp::Pose::make(sx, sy, stheta), gx, gy};
  }
  throw std::runtime_error("generate_scenario: no feasible placement found");
}

}  // namespace afst::eval
