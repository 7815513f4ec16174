#include "fedfraud/models/checkpoint.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace fedfraud {

namespace {

constexpr std::string_view kMagic = "fedfraud-mlp-checkpoint";
constexpr int kVersion = 1;

std::string hex_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::hex);
  return std::string(buf, ptr);
}

}  // namespace

std::string serialize_checkpoint(const MlpParams& params) {
  params.validate();
  std::ostringstream out;
  out << kMagic << ' ' << kVersion << '\n';
  out << "activation " << to_string(params.hidden_activation) << '\n';
  out << "layers";
  for (std::size_t s : params.layer_sizes) out << ' ' << s;
  out << '\n';
  out << "parameters " << params.parameter_count() << '\n';
  for (double v : params.as_vector()) out << hex_double(v) << '\n';
  return out.str();
}

MlpParams parse_checkpoint(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string word;
  int version = 0;
  if (!(in >> word >> version) || word != kMagic) throw CheckpointError("checkpoint: bad header");
  if (version != kVersion) {
    throw CheckpointError("checkpoint: unsupported version " + std::to_string(version));
  }

  std::string activation;
  if (!(in >> word >> activation) || word != "activation") {
    throw CheckpointError("checkpoint: missing activation line");
  }

  std::string line;
  std::getline(in >> std::ws, line);
  std::istringstream layer_line(line);
  std::vector<std::size_t> sizes;
  if (!(layer_line >> word) || word != "layers") throw CheckpointError("checkpoint: missing layers line");
  for (std::size_t s = 0; layer_line >> s;) sizes.push_back(s);

  std::size_t count = 0;
  if (!(in >> word >> count) || word != "parameters") {
    throw CheckpointError("checkpoint: missing parameter count");
  }

  std::vector<double> flat;
  flat.reserve(count);
  while (in >> word) {
    double v = 0.0;
    const auto [ptr, ec] =
        std::from_chars(word.data(), word.data() + word.size(), v, std::chars_format::hex);
    if (ec != std::errc() || ptr != word.data() + word.size()) {
      throw CheckpointError("checkpoint: bad parameter value '" + word + "'");
    }
    flat.push_back(v);
  }
  if (flat.size() != count) {
    throw CheckpointError("checkpoint: expected " + std::to_string(count) + " parameters, found " +
                          std::to_string(flat.size()));
  }
  try {
    MlpParams params = MlpParams::from_vector(sizes, parse_activation(activation), flat);
    params.validate();
    return params;
  } catch (const std::logic_error& e) {
    throw CheckpointError(std::string("checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const MlpParams& params) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write checkpoint '" + path.string() + "'");
  out << serialize_checkpoint(params);
  if (!out) throw IoError("failed writing checkpoint '" + path.string() + "'");
}

MlpParams load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_checkpoint(buffer.str());
}

}  // namespace fedfraud
