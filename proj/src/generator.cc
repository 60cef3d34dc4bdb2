// Copyright 2026 The lbubfl Authors
//
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


#include "lbubfl/generator.h"

#include <random>
#include <sstream>

namespace lbubfl {

Geometry ParseGeometry(const std::string& name) {
  if (name == "uniform") return Geometry::kUniform;
  if (name == "clustered") return Geometry::kClustered;
  if (name == "line") return Geometry::kLine;
  throw Error(ErrorKind::kParameter, "unknown geometry '" + name + "'");
}

const char* GeometryName(Geometry geometry) {
  switch (geometry) {
    case Geometry::kUniform:
      return "uniform";
    case Geometry::kClustered:
      return "clustered";
    case Geometry::kLine:
      return "line";
  }
  return "unknown";
}

namespace {

std::vector<std::string> Ids(const char* prefix, int n) {
  std::vector<std::string> ids;
  for (int k = 0; k < n; ++k) ids.push_back(prefix + std::to_string(k));
  return ids;
}

class PointSampler {
 public:
  PointSampler(Geometry geometry, std::mt19937_64* rng)
      : geometry_(geometry), rng_(rng) {
    if (geometry_ == Geometry::kClustered) {
      const int k = 2 + static_cast<int>((*rng_)() % 4);
      for (int c = 0; c < k; ++c) centers_.push_back({Unit(), Unit()});
    }
  }

  Point Next() {
    switch (geometry_) {
      case Geometry::kUniform:
        break;
      case Geometry::kLine:
        return {Unit(), 0.0};
      case Geometry::kClustered: {
        const Point& c = centers_[(*rng_)() % centers_.size()];
        std::normal_distribution<double> spread(0.0, 0.05);
        return {c.x + spread(*rng_), c.y + spread(*rng_)};
      }
    }
    double x = Unit();
    return {x, Unit()};
  }

 private:
  double Unit() { return std::uniform_real_distribution<double>(0, 1)(*rng_); }

  Geometry geometry_;
  std::mt19937_64* rng_;
  std::vector<Point> centers_;
};

}  // namespace

std::vector<Instance> GenerateInstances(const GeneratorParams& p, int count) {
  if (p.num_facilities < 1 || p.num_clients < 0 || p.lower < 1) {
    throw Error(ErrorKind::kParameter, "sizes and L must be positive");
  }
  if (p.lower > p.upper) {
    std::ostringstream msg;
    msg << "L=" << p.lower << " exceeds U=" << p.upper;
    throw Error(ErrorKind::kParameter, msg.str());
  }
  if (!FeasibleOpenCount(p.num_clients, p.num_facilities, p.lower, p.upper)) {
    std::ostringstream msg;
    msg << "no k <= " << p.num_facilities << " with " << p.lower << "k <= "
        << p.num_clients << " <= " << p.upper << "k";
    throw Error(ErrorKind::kParameter, msg.str());
  }
  if (p.max_open_cost < 0) {
    throw Error(ErrorKind::kParameter, "opening costs must be nonnegative");
  }
  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> unit(0, 1);
  std::vector<Instance> out;
  for (int k = 0; k < count; ++k) {
    PointSampler sampler(p.geometry, &rng);
    std::vector<double> costs;
    std::vector<Point> fp;
    std::vector<Point> cp;
    for (int i = 0; i < p.num_facilities; ++i) {
      costs.push_back(unit(rng) * p.max_open_cost);
      fp.push_back(sampler.Next());
    }
    for (int j = 0; j < p.num_clients; ++j) cp.push_back(sampler.Next());
    out.push_back(Instance::FromCoordinates(
        Ids("f", p.num_facilities), costs, fp, Ids("c", p.num_clients), cp,
        p.lower, p.upper));
  }
  return out;
}

Instance RandomSuiteInstance(uint64_t seed, const SuiteParams& params) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  const int F = 2 + static_cast<int>(rng() % (params.max_facilities - 1));
  int C = 0;
  int L = 0;
  int U = 0;
  do {
    C = 1 + static_cast<int>(rng() % params.max_clients);
    L = 1 + static_cast<int>(rng() % params.max_lower);
    U = L + static_cast<int>(rng() % params.max_lower);
  } while (!FeasibleOpenCount(C, F, L, U));
  std::vector<double> costs;
  std::vector<Point> fp;
  std::vector<Point> cp;
  const double scale = u(rng) * 3;
  for (int i = 0; i < F; ++i) {
    costs.push_back(u(rng) * scale);
    double x = u(rng);
    fp.push_back({x, u(rng)});
  }
  for (int j = 0; j < C; ++j) {
    double x = u(rng);
    cp.push_back({x, u(rng)});
  }
  return Instance::FromCoordinates(Ids("f", F), costs, fp, Ids("c", C), cp, L, U);
}

}  // namespace lbubfl
