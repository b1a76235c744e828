#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace afst::net {

// Self-describing model snapshot: a JSON meta block (architecture,
// environment parameters, precision, epoch, ...) plus named float64
// tensors written in insertion order. Values are stored as float64
// regardless of the training precision; float32 runs cast on load,
// which is lossless in that direction. Writes are fully deterministic
// so identical runs produce identical files.
class Checkpoint {
 public:
  nlohmann::json meta;

  void add(const std::string& name, std::span<const double> data) {
    tensors_.emplace_back(name, std::vector<double>(data.begin(), data.end()));
  }
  template <typename T>
  void add_cast(const std::string& name, std::span<const T> data) {
    std::vector<double> d(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
      d[i] = static_cast<double>(data[i]);
    tensors_.emplace_back(name, std::move(d));
  }

  const std::vector<double>& get(const std::string& name) const;
  bool has(const std::string& name) const;
  const std::vector<std::pair<std::string, std::vector<double>>>& tensors() const {
    return tensors_;
  }

  void save(const std::string& path) const;
  static Checkpoint load(const std::string& path);

 private:
  std::vector<std::pair<std::string, std::vector<double>>> tensors_;
};

}  // namespace afst::net
