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
#include "otgeo/cli/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "otgeo/error.hpp"

namespace otgeo::cli {

namespace {

constexpr std::array<const char*, 10> kPalette{
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

constexpr double kSize = 480.0;
constexpr double kMargin = 16.0;

std::string fixed(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.2f", v);
  return buf.data();
}

}  // namespace

void write_svg(const LabeledDataset& ds, std::ostream& out) {
  const Eigen::Index cy = ds.dim() > 1 ? 1 : 0;
  const Eigen::VectorXd xs = ds.features.col(0);
  const Eigen::VectorXd ys = ds.features.col(cy);
  const double x_lo = xs.minCoeff();
  const double y_lo = ys.minCoeff();
  const double span = std::max({xs.maxCoeff() - x_lo, ys.maxCoeff() - y_lo, 1e-12});
  const double scale = (kSize - 2 * kMargin) / span;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\""
      << kSize << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (Eigen::Index i = 0; i < ds.size(); ++i) {
    Eigen::Index cls = 0;
    ds.labels.row(i).maxCoeff(&cls);
    const double px = kMargin + (xs[i] - x_lo) * scale;
    const double py = kSize - kMargin - (ys[i] - y_lo) * scale;
    out << "<circle cx=\"" << fixed(px) << "\" cy=\"" << fixed(py) << "\" r=\"2.5\" fill=\""
        << kPalette[static_cast<std::size_t>(cls) % kPalette.size()]
        << "\" fill-opacity=\"0.8\"/>\n";
  }
  out << "</svg>\n";
}

void save_svg(const LabeledDataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "' for writing");
  write_svg(ds, out);
  if (!out) throw Error(ErrorCode::kIoError, "failed writing '" + path.string() + "'");
}

}  // namespace otgeo::cli
