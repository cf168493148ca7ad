// Copyright 2026 The cpsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <array>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "cps/config_json.hpp"
#include "cps/net.hpp"

namespace cps {

using nlohmann::json;

namespace {

constexpr std::array<char, 8> kMagic = {'C', 'P', 'S', 'C', 'K', 'P', 'T', '\x01'};
constexpr int kFormatVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  const std::array<char, 4> b = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  os.write(b.data(), 4);
}

std::uint32_t get_u32(std::istream& is) {
  std::array<unsigned char, 4> b{};
  is.read(reinterpret_cast<char*>(b.data()), 4);
  if (!is) throw std::runtime_error("checkpoint truncated");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_tensors(std::ostream& os, const NetParams<float>& p) {
  p.for_each([&](const std::string&, const Mat<float>& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) put_u32(os, std::bit_cast<std::uint32_t>(m.data()[i]));
  });
}

void get_tensors(std::istream& is, NetParams<float>& p) {
  p.for_each([&](const std::string&, Mat<float>& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = std::bit_cast<float>(get_u32(is));
  });
}

}  // namespace

void save_checkpoint(const std::string& path, const NetParams<float>& params, const AdamW* optimizer,
                     const std::string& extra_json) {
  json header;
  header["format_version"] = kFormatVersion;
  header["config"] = params.config;
  json shapes = json::array();
  params.for_each([&](const std::string& name, const Mat<float>& m) {
    shapes.push_back({{"name", name}, {"rows", m.rows()}, {"cols", m.cols()}});
  });
  header["tensors"] = std::move(shapes);
  header["has_moments"] = optimizer != nullptr;
  header["step"] = optimizer ? optimizer->steps_taken() : 0;
  header["optimizer"] = optimizer ? optimizer->config() : OptimizerConfig{};
  header["extra"] = extra_json;
  const std::string text = header.dump();

  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write checkpoint: " + path);
    os.write(kMagic.data(), kMagic.size());
    put_u32(os, static_cast<std::uint32_t>(text.size()));
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
    put_tensors(os, params);
    if (optimizer) {
      put_tensors(os, optimizer->first_moment());
      put_tensors(os, optimizer->second_moment());
    }
    if (!os) throw std::runtime_error("failed writing checkpoint: " + path);
  }
  std::filesystem::rename(tmp, path);
}

LoadedCheckpoint load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open checkpoint: " + path);
  std::array<char, 8> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) throw std::runtime_error("not a checkpoint file: " + path);
  const std::uint32_t len = get_u32(is);
  std::string text(len, '\0');
  is.read(text.data(), len);
  if (!is) throw std::runtime_error("checkpoint truncated: " + path);
  json header;
  try {
    header = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed checkpoint header: ") + e.what());
  }
  if (header.value("format_version", 0) != kFormatVersion) {
    throw std::runtime_error("unsupported checkpoint version in " + path);
  }
  LoadedCheckpoint out;
  NetConfig config;
  try {
    config = header.at("config").get<NetConfig>();
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("bad checkpoint config: ") + e.what());
  }
  out.params = NetParams<float>::zeros(config);
  std::size_t i = 0;
  const json& shapes = header.at("tensors");
  out.params.for_each([&](const std::string& name, const Mat<float>& m) {
    if (i >= shapes.size() || shapes[i].at("name") != name || shapes[i].at("rows") != m.rows() ||
        shapes[i].at("cols") != m.cols()) {
      throw std::runtime_error("checkpoint tensor layout mismatch at " + name);
    }
    ++i;
  });
  if (i != shapes.size()) throw std::runtime_error("checkpoint has extra tensors");
  get_tensors(is, out.params);
  out.has_moments = header.at("has_moments").get<bool>();
  out.step = header.at("step").get<std::int64_t>();
  out.optimizer = header.at("optimizer").get<OptimizerConfig>();
  if (out.has_moments) {
    out.first_moment = NetParams<float>::zeros(config);
    out.second_moment = NetParams<float>::zeros(config);
    get_tensors(is, out.first_moment);
    get_tensors(is, out.second_moment);
  }
  out.extra_json = header.at("extra").get<std::string>();
  if (is.peek() != std::char_traits<char>::eof()) throw std::runtime_error("trailing bytes in checkpoint");
  return out;
}

}  // namespace cps
