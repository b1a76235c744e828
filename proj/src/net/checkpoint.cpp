#include "afst/net/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace afst::net {

namespace {
constexpr char kMagic[8] = {'A', 'F', 'S', 'T', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;
}  // namespace

const std::vector<double>& Checkpoint::get(const std::string& name) const {
  for (const auto& [n, data] : tensors_)
    if (n == name) return data;
  throw std::runtime_error("checkpoint: missing tensor '" + name + "'");
}

bool Checkpoint::has(const std::string& name) const {
  for (const auto& [n, data] : tensors_)
    if (n == name) return true;
  return false;
}

void Checkpoint::save(const std::string& path) const {
  nlohmann::json header;
  header["meta"] = meta;
  auto& table = header["tensors"] = nlohmann::json::array();
  for (const auto& [name, data] : tensors_)
    table.push_back({{"name", name}, {"count", data.size()}});
  const std::string hdr = header.dump();

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("checkpoint: cannot write " + path);
  out.write(kMagic, sizeof(kMagic));
  out.write(reinterpret_cast<const char*>(&kVersion), sizeof(kVersion));
  const std::uint64_t hlen = hdr.size();
  out.write(reinterpret_cast<const char*>(&hlen), sizeof(hlen));
  out.write(hdr.data(), static_cast<std::streamsize>(hdr.size()));
  for (const auto& [name, data] : tensors_)
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size() * sizeof(double)));
  if (!out) throw std::runtime_error("checkpoint: write failed for " + path);
}

Checkpoint Checkpoint::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
  char magic[8];
  std::uint32_t version = 0;
  std::uint64_t hlen = 0;
  in.read(magic, sizeof(magic));
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  in.read(reinterpret_cast<char*>(&hlen), sizeof(hlen));
  if (!in || std::memcmp(magic, kMagic, sizeof(magic)) != 0)
    throw std::runtime_error("checkpoint: bad magic in " + path);
  if (version != kVersion)
    throw std::runtime_error("checkpoint: unsupported version in " + path);
  std::string hdr(hlen, '\0');
  in.read(hdr.data(), static_cast<std::streamsize>(hlen));
  const nlohmann::json header = nlohmann::json::parse(hdr);

  Checkpoint ckpt;
  ckpt.meta = header.at("meta");
  for (const auto& entry : header.at("tensors")) {
    std::vector<double> data(entry.at("count").get<std::size_t>());
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(double)));
    ckpt.tensors_.emplace_back(entry.at("name").get<std::string>(),
                               std::move(data));
  }
  if (!in) throw std::runtime_error("checkpoint: truncated file " + path);
  return ckpt;
}

}  // namespace afst::net
