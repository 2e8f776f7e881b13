// SPDX-License-Identifier: Apache-2.0
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "loraseq/encoder.hpp"
#include "loraseq/error.hpp"

namespace loraseq::encoder {

namespace {

constexpr char kMagic[8] = {'L', 'S', 'E', 'Q', 'M', 'D', 'L', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

template <typename T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }

  std::string get_string(std::size_t n) {
    need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  void get_doubles(std::span<double> out) {
    need(out.size() * sizeof(double));
    if (!out.empty()) std::memcpy(out.data(), bytes_.data() + pos_, out.size() * sizeof(double));
    pos_ += out.size() * sizeof(double);
  }

  bool at_end() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw DataError("model checkpoint is truncated");
  }

  const std::string& bytes_;
  std::size_t pos_ = 0;
};

nlohmann::ordered_json adapter_layout(const Model& model) {
  nlohmann::ordered_json layout = nlohmann::ordered_json::array();
  for (const auto& layer : model.layers) {
    layout.push_back({{"query", layer.query.adapter.has_value()},
                      {"value", layer.value.adapter.has_value()}});
  }
  return layout;
}

}  // namespace

std::string serialize_checkpoint(const Model& model, const nlohmann::json& metadata) {
  nlohmann::ordered_json header;
  header["config"] = model.config.to_json();
  header["adapters"] = adapter_layout(model);
  header["metadata"] = metadata;
  const std::string header_text = header.dump();

  std::string out(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kFormatVersion);
  put<std::uint64_t>(out, header_text.size());
  out += header_text;
  const auto params = model.parameters();
  put<std::uint32_t>(out, static_cast<std::uint32_t>(params.size()));
  for (const auto& p : params) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(p.name.size()));
    out += p.name;
    put<std::uint64_t>(out, p.value->rows());
    put<std::uint64_t>(out, p.value->cols());
    const auto data = p.value->data();
    out.append(reinterpret_cast<const char*>(data.data()), data.size() * sizeof(double));
  }
  return out;
}

static Checkpoint deserialize_impl(const std::string& bytes) {
  Reader in(bytes);
  if (in.get_string(sizeof(kMagic)) != std::string(kMagic, sizeof(kMagic))) {
    throw DataError("not a model checkpoint (bad magic)");
  }
  const auto version = in.get<std::uint32_t>();
  if (version != kFormatVersion) {
    throw DataError("unsupported checkpoint version " + std::to_string(version));
  }
  const auto header_len = in.get<std::uint64_t>();
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(in.get_string(header_len));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("checkpoint header: ") + e.what());
  }

  // Rebuild the skeleton with the recorded adapter layout, then overwrite
  // every matrix from the payload.
  ModelConfig config = ModelConfig::from_json(header.at("config"));
  SeededRng scratch(0);
  Checkpoint ck{build_model(config, scratch), header.value("metadata", nlohmann::json::object())};
  const auto& layout = header.at("adapters");
  if (layout.size() != ck.model.layers.size()) throw DataError("checkpoint adapter layout mismatch");
  for (std::size_t l = 0; l < ck.model.layers.size(); ++l) {
    auto& layer = ck.model.layers[l];
    if (!layout[l].at("query").get<bool>()) layer.query.adapter.reset();
    if (!layout[l].at("value").get<bool>()) layer.value.adapter.reset();
    if (layout[l].at("query").get<bool>() && !layer.query.adapter) {
      throw DataError("checkpoint declares a query adapter the config does not allow");
    }
    if (layout[l].at("value").get<bool>() && !layer.value.adapter) {
      throw DataError("checkpoint declares a value adapter the config does not allow");
    }
  }

  auto params = ck.model.parameters();
  const auto count = in.get<std::uint32_t>();
  if (count != params.size()) {
    throw DataError("checkpoint has " + std::to_string(count) + " matrices, expected " +
                    std::to_string(params.size()));
  }
  for (auto& p : params) {
    const auto name = in.get_string(in.get<std::uint32_t>());
    if (name != p.name) throw DataError("checkpoint matrix '" + name + "', expected " + p.name);
    const auto rows = in.get<std::uint64_t>();
    const auto cols = in.get<std::uint64_t>();
    if (rows != p.value->rows() || cols != p.value->cols()) {
      throw DataError("checkpoint matrix " + name + " has wrong shape");
    }
    in.get_doubles(p.value->data());
  }
  if (!in.at_end()) throw DataError("trailing bytes after checkpoint payload");
  return ck;
}

Checkpoint deserialize_checkpoint(const std::string& bytes) {
  try {
    return deserialize_impl(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("checkpoint header: ") + e.what());
  }
}

void save_checkpoint(const Model& model, const nlohmann::json& metadata,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  const std::string bytes = serialize_checkpoint(model, metadata);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return deserialize_checkpoint(ss.str());
}

}  // namespace loraseq::encoder
