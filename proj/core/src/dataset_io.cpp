// Copyright 2026 The otgeo Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "otgeo/dataset_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "otgeo/error.hpp"

namespace otgeo {

namespace {

constexpr std::array<char, 4> kMagic{'O', 'T', 'D', 'S'};
constexpr std::uint8_t kSoftFlag = 0x1;

[[noreturn]] void io_error(const std::string& message) {
  throw Error(ErrorCode::kIoError, message);
}

void put_double(std::string& out, double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), res.ptr);
}

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    bytes[b] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * b)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in, const char* what) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    io_error(std::string("truncated binary dataset while reading ") + what);
  }
  std::uint64_t v = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) v |= std::uint64_t{bytes[b]} << (8 * b);
  return static_cast<T>(v);
}

void put_f32(std::ostream& out, double v) {
  put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
}

double get_f32(std::istream& in, const char* what) {
  return static_cast<double>(std::bit_cast<float>(get_le<std::uint32_t>(in, what)));
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    auto field = line.substr(start, pos == std::string_view::npos ? pos : pos - start);
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front()))) field.remove_prefix(1);
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back()))) field.remove_suffix(1);
    out.push_back(field);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view field, std::size_t line) {
  double v = 0.0;
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    io_error("line " + std::to_string(line) + ": cannot parse number '" +
             std::string(field) + "'");
  }
  return v;
}

struct CsvHeader {
  std::vector<std::size_t> feature_cols;
  std::vector<std::size_t> label_cols;
  bool hard = false;
};

// Columns named x<i> and y<i> must appear as x0, x1, ... and y0, y1, ...
CsvHeader parse_header(const std::vector<std::string_view>& names) {
  CsvHeader h;
  for (std::size_t c = 0; c < names.size(); ++c) {
    const auto name = names[c];
    if (name == "y") {
      h.hard = true;
      h.label_cols.push_back(c);
      continue;
    }
    if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'y')) {
      std::size_t index = 0;
      const auto res = std::from_chars(name.data() + 1, name.data() + name.size(), index);
      if (res.ec == std::errc() && res.ptr == name.data() + name.size()) {
        auto& cols = name[0] == 'x' ? h.feature_cols : h.label_cols;
        if (index != cols.size()) {
          io_error("header column '" + std::string(name) + "' out of order");
        }
        cols.push_back(c);
        continue;
      }
    }
    io_error("unexpected header column '" + std::string(name) + "'");
  }
  if (h.feature_cols.empty()) io_error("CSV header has no x columns");
  if (h.hard && h.label_cols.size() != 1) io_error("CSV mixes y and y<i> columns");
  return h;
}

struct CsvTable {
  CsvHeader header;
  std::vector<std::vector<double>> rows;
};

CsvTable read_table(std::istream& in) {
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = split_commas(line);
    if (!have_header) {
      t.header = parse_header(fields);
      width = fields.size();
      have_header = true;
      continue;
    }
    if (fields.size() != width) {
      io_error("line " + std::to_string(line_no) + ": expected " +
               std::to_string(width) + " fields, got " + std::to_string(fields.size()));
    }
    std::vector<double> row(width);
    for (std::size_t c = 0; c < width; ++c) row[c] = parse_double(fields[c], line_no);
    t.rows.push_back(std::move(row));
  }
  if (!have_header) io_error("empty CSV file");
  if (t.rows.empty()) io_error("CSV file has no data rows");
  return t;
}

Eigen::MatrixXd table_features(const CsvTable& t) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(t.rows.size()),
                    static_cast<Eigen::Index>(t.header.feature_cols.size()));
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t c = 0; c < t.header.feature_cols.size(); ++c) {
      x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          t.rows[r][t.header.feature_cols[c]];
    }
  }
  return x;
}

LabeledDataset checked(LabeledDataset ds) {
  try {
    validate(ds);
  } catch (const Error& e) {
    io_error(std::string("invalid dataset contents: ") + e.what());
  }
  return ds;
}

}  // namespace

DatasetFormat format_for_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".csv" ? DatasetFormat::kCsv : DatasetFormat::kBinary;
}

void write_csv(const LabeledDataset& ds, std::ostream& out) {
  const bool hard = is_hard_labeled(ds);
  const auto ids = hard ? hard_label_ids(ds) : std::vector<Eigen::Index>{};
  std::string line;
  for (Eigen::Index c = 0; c < ds.dim(); ++c) {
    line += (c ? ",x" : "x") + std::to_string(c);
  }
  if (hard) {
    line += ",y";
  } else {
    for (Eigen::Index c = 0; c < ds.num_classes(); ++c) line += ",y" + std::to_string(c);
  }
  out << line << '\n';
  for (Eigen::Index i = 0; i < ds.size(); ++i) {
    line.clear();
    for (Eigen::Index c = 0; c < ds.dim(); ++c) {
      if (c) line += ',';
      put_double(line, ds.features(i, c));
    }
    if (hard) {
      line += ',' + std::to_string(ids[static_cast<std::size_t>(i)]);
    } else {
      for (Eigen::Index c = 0; c < ds.num_classes(); ++c) {
        line += ',';
        put_double(line, ds.labels(i, c));
      }
    }
    out << line << '\n';
  }
}

LabeledDataset read_csv(std::istream& in, std::string id) {
  const auto t = read_table(in);
  if (t.header.label_cols.empty()) io_error("CSV file has no label columns");
  const auto n = static_cast<Eigen::Index>(t.rows.size());
  Eigen::MatrixXd labels;
  if (t.header.hard) {
    std::vector<Eigen::Index> ids(t.rows.size());
    Eigen::Index classes = 0;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const double v = t.rows[r][t.header.label_cols[0]];
      if (!(v >= 0.0) || v != static_cast<double>(static_cast<Eigen::Index>(v))) {
        io_error("row " + std::to_string(r + 1) + ": label is not a class id");
      }
      ids[r] = static_cast<Eigen::Index>(v);
      classes = std::max(classes, ids[r] + 1);
    }
    labels = Eigen::MatrixXd::Zero(n, classes);
    for (std::size_t r = 0; r < ids.size(); ++r) labels(static_cast<Eigen::Index>(r), ids[r]) = 1.0;
  } else {
    labels.resize(n, static_cast<Eigen::Index>(t.header.label_cols.size()));
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      for (std::size_t c = 0; c < t.header.label_cols.size(); ++c) {
        labels(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            t.rows[r][t.header.label_cols[c]];
      }
    }
  }
  LabeledDataset ds{table_features(t), std::move(labels), {}, std::move(id)};
  ds.class_names = default_class_names(ds.labels.cols());
  return checked(std::move(ds));
}

void write_binary(const LabeledDataset& ds, std::ostream& out) {
  const bool hard = is_hard_labeled(ds);
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kBinaryVersion);
  put_le<std::uint8_t>(out, hard ? 0 : kSoftFlag);
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(ds.size()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(ds.dim()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(ds.num_classes()));
  for (Eigen::Index i = 0; i < ds.size(); ++i) {
    for (Eigen::Index c = 0; c < ds.dim(); ++c) put_f32(out, ds.features(i, c));
  }
  if (hard) {
    for (const auto id : hard_label_ids(ds)) put_le<std::uint32_t>(out, static_cast<std::uint32_t>(id));
  } else {
    for (Eigen::Index i = 0; i < ds.size(); ++i) {
      for (Eigen::Index c = 0; c < ds.num_classes(); ++c) put_f32(out, ds.labels(i, c));
    }
  }
}

LabeledDataset read_binary(std::istream& in, std::string id) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    io_error("missing OTDS magic bytes");
  }
  const auto version = get_le<std::uint32_t>(in, "version");
  if (version != kBinaryVersion) {
    io_error("unsupported binary dataset version " + std::to_string(version));
  }
  const auto flags = get_le<std::uint8_t>(in, "flags");
  const auto n = get_le<std::uint64_t>(in, "n");
  const auto d = get_le<std::uint32_t>(in, "d");
  const auto c = get_le<std::uint32_t>(in, "C");
  if (n == 0 || d == 0 || c == 0) io_error("binary dataset has an empty dimension");
  const auto rows = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd features(rows, static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < features.cols(); ++j) features(i, j) = get_f32(in, "features");
  }
  Eigen::MatrixXd labels = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(c));
  if (flags & kSoftFlag) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < labels.cols(); ++j) labels(i, j) = get_f32(in, "labels");
      const double sum = labels.row(i).sum();
      if (sum > 0.0) labels.row(i) /= sum;
    }
  } else {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const auto label = get_le<std::uint32_t>(in, "labels");
      if (label >= c) io_error("class id " + std::to_string(label) + " out of range");
      labels(i, static_cast<Eigen::Index>(label)) = 1.0;
    }
  }
  LabeledDataset ds{std::move(features), std::move(labels),
                    default_class_names(static_cast<Eigen::Index>(c)), std::move(id)};
  return checked(std::move(ds));
}

void save_dataset(const LabeledDataset& ds, const std::filesystem::path& path,
                  std::optional<DatasetFormat> format) {
  const auto fmt = format.value_or(format_for_path(path));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) io_error("cannot open '" + path.string() + "' for writing");
  if (fmt == DatasetFormat::kCsv) {
    write_csv(ds, out);
  } else {
    write_binary(ds, out);
  }
  out.flush();
  if (!out) io_error("failed writing '" + path.string() + "'");
}

namespace {

bool has_magic(std::istream& in) {
  std::array<char, 4> head{};
  in.read(head.data(), head.size());
  const bool ok = in.gcount() == 4 && head == kMagic;
  in.clear();
  in.seekg(0);
  return ok;
}

std::ifstream open_for_reading(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

LabeledDataset load_dataset(const std::filesystem::path& path) {
  auto in = open_for_reading(path);
  const auto id = path.stem().string();
  try {
    return has_magic(in) ? read_binary(in, id) : read_csv(in, id);
  } catch (const Error& e) {
    io_error(path.string() + ": " + e.what());
  }
}

Eigen::MatrixXd load_features(const std::filesystem::path& path) {
  auto in = open_for_reading(path);
  try {
    if (has_magic(in)) return read_binary(in, path.stem().string()).features;
    return table_features(read_table(in));
  } catch (const Error& e) {
    io_error(path.string() + ": " + e.what());
  }
}

}  // namespace otgeo
