#include "tcboost/datasets.hpp"

#include <cctype>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tcboost/rng.hpp"

namespace tcboost {

namespace fs = std::filesystem;

Dataset gen_toy_2d(int m1, int m2, std::uint64_t seed) {
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("gen_toy_2d: need m1 >= 1 and m2 >= 1");
  Rng rng(seed, "toy2d");
  MatrixXd features(m1 + m2, 2);
  VectorXi labels(m1 + m2);
  for (int i = 0; i < m1; ++i) {
    features(i, 0) = 1.0 + 0.8 * rng.normal();
    features(i, 1) = 1.0 + 0.8 * rng.normal();
    labels[i] = +1;
  }
  for (int i = 0; i < m2; ++i) {
    features(m1 + i, 0) = -1.0 + 1.4 * rng.normal();
    features(m1 + i, 1) = -1.0 + 1.4 * rng.normal();
    labels[m1 + i] = -1;
  }
  return Dataset(std::move(features), std::move(labels));
}

NodeStream gen_node_stream(const std::vector<double>& d_probs, const std::vector<double>& f_probs,
                           std::int64_t n_pos, std::int64_t n_neg, std::uint64_t seed) {
  if (d_probs.size() != f_probs.size()) throw std::invalid_argument("gen_node_stream: probability lists differ");
  for (const double p : d_probs) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("gen_node_stream: d out of [0,1]");
  }
  for (const double p : f_probs) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("gen_node_stream: f out of [0,1]");
  }
  Rng rng(seed, "node-stream");
  NodeStream out;
  std::int64_t pos = n_pos, neg = n_neg;
  for (std::size_t t = 0; t < d_probs.size(); ++t) {
    NodeStreamRow row;
    row.node = static_cast<int>(t);
    row.pos_in = pos;
    row.neg_in = neg;
    std::int64_t pos_out = 0;
    for (std::int64_t i = 0; i < pos; ++i) {
      if (rng.bernoulli(d_probs[t])) ++pos_out;
    }
    std::int64_t neg_out = 0;
    for (std::int64_t i = 0; i < neg; ++i) {
      if (rng.bernoulli(f_probs[t])) ++neg_out;
    }
    row.pos_out = pos = pos_out;
    row.neg_out = neg = neg_out;
    out.rows.push_back(row);
  }
  out.empirical_f_dr = n_pos > 0 ? static_cast<double>(pos) / static_cast<double>(n_pos) : 1.0;
  out.empirical_f_fp = n_neg > 0 ? static_cast<double>(neg) / static_cast<double>(n_neg) : 1.0;
  return out;
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

int parse_label(const std::string& token) {
  if (token == "+1" || token == "1") return +1;
  if (token == "-1") return -1;
  return 0;
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string token;
    std::vector<double> row;
    int label = 0;
    bool first = true;
    while (std::getline(ss, token, ',')) {
      if (first) {
        label = parse_label(token);
        if (label == 0) parse_fail(path, line_no, "label must be +1, 1, or -1, got '" + token + "'");
        first = false;
        continue;
      }
      try {
        std::size_t used = 0;
        row.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        parse_fail(path, line_no, "bad feature value '" + token + "'");
      }
    }
    if (first) parse_fail(path, line_no, "empty record");
    if (!rows.empty() && row.size() != rows.front().size()) {
      parse_fail(path, line_no, "inconsistent feature count");
    }
    rows.push_back(std::move(row));
    labels.push_back(label);
  }
  if (rows.empty()) throw std::runtime_error(path + ": no records");
  MatrixXd features(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  VectorXi label_vec(static_cast<Index>(labels.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      features(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
    label_vec[static_cast<Index>(i)] = labels[i];
  }
  return Dataset(std::move(features), std::move(label_vec));
}

void save_csv(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  char buffer[64];
  for (Index i = 0; i < dataset.size(); ++i) {
    out << (dataset.labels()[i] == 1 ? "+1" : "-1");
    for (Index j = 0; j < dataset.features().cols(); ++j) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", dataset.features()(i, j));
      out << ',' << buffer;
    }
    out << '\n';
  }
}

Dataset load_images(const std::string& dir) {
  const fs::path manifest = fs::path(dir) / "manifest.csv";
  std::ifstream in(manifest);
  if (!in) throw std::runtime_error("cannot open " + manifest.string());
  std::vector<GrayImage> windows;
  std::vector<int> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) parse_fail(manifest.string(), line_no, "expected filename,label");
    const std::string filename = line.substr(0, comma);
    const int label = parse_label(line.substr(comma + 1));
    if (label == 0) parse_fail(manifest.string(), line_no, "label must be +1, 1, or -1");
    windows.push_back(load_pgm((fs::path(dir) / filename).string()));
    labels.push_back(label);
  }
  if (windows.empty()) throw std::runtime_error(manifest.string() + ": no records");
  VectorXi label_vec(static_cast<Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) label_vec[static_cast<Index>(i)] = labels[i];
  return Dataset(std::move(windows), std::move(label_vec));
}

void save_images(const Dataset& dataset, const std::string& dir) {
  fs::create_directories(dir);
  std::ofstream manifest(fs::path(dir) / "manifest.csv");
  if (!manifest) throw std::runtime_error("cannot write manifest in " + dir);
  char name[32];
  for (Index i = 0; i < dataset.size(); ++i) {
    std::snprintf(name, sizeof(name), "win_%06" PRId64 ".pgm", static_cast<std::int64_t>(i));
    save_pgm(dataset.windows()[static_cast<std::size_t>(i)], (fs::path(dir) / name).string());
    manifest << name << ',' << (dataset.labels()[i] == 1 ? "+1" : "-1") << '\n';
  }
}

}  // namespace

Dataset load_dataset(const std::string& path, Dataset::Mode mode) {
  return mode == Dataset::Mode::vectors ? load_csv(path) : load_images(path);
}

void save_dataset(const Dataset& dataset, const std::string& path) {
  if (dataset.mode() == Dataset::Mode::vectors) {
    save_csv(dataset, path);
  } else {
    save_images(dataset, path);
  }
}

GrayImage load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  auto next_token = [&]() {
    std::string token;
    int ch;
    while ((ch = in.get()) != EOF) {
      if (ch == '#') {  // comment to end of line
        while ((ch = in.get()) != EOF && ch != '\n') {
        }
        continue;
      }
      if (std::isspace(ch)) {
        if (!token.empty()) break;
        continue;
      }
      token.push_back(static_cast<char>(ch));
    }
    return token;
  };
  if (next_token() != "P5") throw std::runtime_error(path + ": not a binary (P5) PGM");
  GrayImage image;
  try {
    image.width = std::stoi(next_token());
    image.height = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (maxval != 255) throw std::runtime_error(path + ": maxval must be 255, got " + std::to_string(maxval));
  } catch (const std::invalid_argument&) {
    throw std::runtime_error(path + ": malformed PGM header");
  }
  if (image.width <= 0 || image.height <= 0) throw std::runtime_error(path + ": bad dimensions");
  const std::size_t count = static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height);
  image.pixels.resize(count);
  in.read(reinterpret_cast<char*>(image.pixels.data()), static_cast<std::streamsize>(count));
  if (static_cast<std::size_t>(in.gcount()) != count) throw std::runtime_error(path + ": truncated pixel data");
  return image;
}

void save_pgm(const GrayImage& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
}

}  // namespace tcboost
