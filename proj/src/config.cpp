// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "hodge/harness.hpp"

namespace hodge
{

namespace
{

namespace pt = boost::property_tree;

template <class T>
std::vector<T> parse_list(const std::string &key, const std::string &text)
{
  std::vector<T> out;
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(","));
  for (auto part : parts)
  {
    boost::trim(part);
    if (part.empty())
    {
      continue;
    }
    try
    {
      std::size_t used = 0;
      if constexpr (std::is_same_v<T, int>)
      {
        out.push_back(std::stoi(part, &used));
      }
      else
      {
        out.push_back(std::stod(part, &used));
      }
      HODGE_REQUIRE(used == part.size(), ErrorCode::Parse, "");
    }
    catch (const std::exception &)
    {
      throw Error(ErrorCode::Parse, fmt::format("{}: cannot parse '{}'", key, part));
    }
  }
  return out;
}

template <class T>
T scalar(const pt::ptree &tree, const std::string &key, T fallback)
{
  const auto text = tree.get_optional<std::string>(key);
  if (!text)
  {
    return fallback;
  }
  if constexpr (std::is_same_v<T, std::string>)
  {
    return boost::trim_copy(*text);
  }
  else if constexpr (std::is_same_v<T, bool>)
  {
    const std::string v = boost::to_lower_copy(boost::trim_copy(*text));
    HODGE_REQUIRE(v == "true" || v == "false" || v == "1" || v == "0", ErrorCode::Parse,
                  fmt::format("{}: expected a boolean, got '{}'", key, *text));
    return v == "true" || v == "1";
  }
  else
  {
    const auto list = parse_list<T>(key, *text);
    HODGE_REQUIRE(list.size() == 1, ErrorCode::Parse, fmt::format("{}: expected one value", key));
    return list[0];
  }
}

template <class T>
std::vector<T> list(const pt::ptree &tree, const std::string &key)
{
  const auto text = tree.get_optional<std::string>(key);
  return text ? parse_list<T>(key, *text) : std::vector<T>{};
}

template <class T>
std::string join(const std::vector<T> &v)
{
  std::string s;
  for (std::size_t i = 0; i < v.size(); i++)
  {
    s += fmt::format("{}{:.17g}", i ? ", " : "", static_cast<double>(v[i]));
  }
  return s;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const std::string &text)
{
  pt::ptree tree;
  std::istringstream in(text);
  try
  {
    pt::read_ini(in, tree);
  }
  catch (const pt::ini_parser_error &e)
  {
    throw Error(ErrorCode::Parse, fmt::format("line {}: {}", e.line(), e.message()));
  }
  static const std::map<std::string, std::vector<std::string>> known = {
    {"experiment", {"id", "output", "seed", "workers"}},
    {"domain",
     {"family", "n", "p", "outer_radius", "hole_radius", "extra_radius", "sectors", "eps", "rc",
      "radius", "holes"}},
    {"mesh", {"h"}},
    {"solver", {"degree", "k", "tol", "max_iterations"}},
    {"cover",
     {"kind", "margin", "r0_coeff", "level", "separation_divisor", "split", "overlap", "glue"}},
    {"analysis", {"slope_x", "test_form"}}};
  for (const auto &[section, body] : tree)
  {
    auto it = known.find(section);
    HODGE_REQUIRE(it != known.end() && !body.empty(), ErrorCode::Parse,
                  fmt::format("unknown section or top-level key '{}'", section));
    for (const auto &[key, value] : body)
    {
      HODGE_REQUIRE(std::find(it->second.begin(), it->second.end(), key) != it->second.end(),
                    ErrorCode::Parse, fmt::format("unknown key {}.{}", section, key));
    }
  }
  ExperimentConfig c;
  c.id = scalar(tree, "experiment.id", c.id);
  c.output = scalar(tree, "experiment.output", c.output);
  c.seed = static_cast<std::uint64_t>(scalar(tree, "experiment.seed", static_cast<double>(c.seed)));
  c.workers = scalar(tree, "experiment.workers", c.workers);
  c.family = scalar(tree, "domain.family", c.family);
  c.n = scalar(tree, "domain.n", c.n);
  c.p = scalar(tree, "domain.p", c.p);
  c.outer_radius = scalar(tree, "domain.outer_radius", c.outer_radius);
  c.hole_radius = scalar(tree, "domain.hole_radius", c.hole_radius);
  c.extra_radius = scalar(tree, "domain.extra_radius", c.extra_radius);
  c.sectors = scalar(tree, "domain.sectors", c.sectors);
  c.eps = list<double>(tree, "domain.eps");
  c.rc = list<double>(tree, "domain.rc");
  c.radius = list<double>(tree, "domain.radius");
  c.holes = list<int>(tree, "domain.holes");
  c.h = list<double>(tree, "mesh.h");
  c.degree = scalar(tree, "solver.degree", c.degree);
  c.k = scalar(tree, "solver.k", c.k);
  c.tol = scalar(tree, "solver.tol", c.tol);
  c.max_iterations = scalar(tree, "solver.max_iterations", c.max_iterations);
  c.cover = scalar(tree, "cover.kind", c.cover);
  c.margin = scalar(tree, "cover.margin", c.margin);
  c.r0_coeff = scalar(tree, "cover.r0_coeff", c.r0_coeff);
  c.level = scalar(tree, "cover.level", c.level);
  c.separation_divisor = scalar(tree, "cover.separation_divisor", c.separation_divisor);
  c.split = scalar(tree, "cover.split", c.split);
  c.overlap = scalar(tree, "cover.overlap", c.overlap);
  c.glue = scalar(tree, "cover.glue", c.glue);
  c.slope_x = scalar(tree, "analysis.slope_x", c.slope_x);
  c.test_form = scalar(tree, "analysis.test_form", c.test_form);
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string &path)
{
  std::ifstream in(path);
  HODGE_REQUIRE(in.good(), ErrorCode::Io, fmt::format("cannot open {}", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string ExperimentConfig::format() const
{
  std::string s;
  s += fmt::format("[experiment]\nid = {}\noutput = {}\nseed = {}\nworkers = {}\n\n", id, output,
                   seed, workers);
  s += fmt::format("[domain]\nfamily = {}\nn = {}\np = {}\nouter_radius = {:.17g}\n"
                   "hole_radius = {:.17g}\nextra_radius = {:.17g}\nsectors = {}\n",
                   family, n, p, outer_radius, hole_radius, extra_radius, sectors);
  if (!eps.empty())
  {
    s += "eps = " + join(eps) + "\n";
  }
  if (!rc.empty())
  {
    s += "rc = " + join(rc) + "\n";
  }
  if (!radius.empty())
  {
    s += "radius = " + join(radius) + "\n";
  }
  if (!holes.empty())
  {
    s += "holes = " + join(holes) + "\n";
  }
  s += "\n[mesh]\nh = " + join(h) + "\n\n";
  s += fmt::format("[solver]\ndegree = {}\nk = {}\ntol = {:.17g}\nmax_iterations = {}\n\n", degree,
                   k, tol, max_iterations);
  s += fmt::format("[cover]\nkind = {}\nmargin = {:.17g}\nr0_coeff = {:.17g}\nlevel = {}\n"
                   "separation_divisor = {:.17g}\nsplit = {:.17g}\noverlap = {:.17g}\nglue = {}\n\n",
                   cover, margin, r0_coeff, level, separation_divisor, split, overlap,
                   glue ? "true" : "false");
  s += fmt::format("[analysis]\nslope_x = {}\ntest_form = {}\n", slope_x,
                   test_form ? "true" : "false");
  return s;
}

void ExperimentConfig::validate() const
{
  static const std::vector<std::string> families = {
    "square", "disk", "annulus", "shell", "perforated_square", "dumbbell", "aeps", "multi_hole"};
  static const std::vector<std::string> covers = {"none",        "dumbbell", "case2",
                                                  "shell_split", "power",    "sphere"};
  auto one_of = [](const std::vector<std::string> &set, const std::string &v) {
    return std::find(set.begin(), set.end(), v) != set.end();
  };
  HODGE_REQUIRE(one_of(families, family), ErrorCode::InvalidArgument,
                fmt::format("unknown family '{}'", family));
  HODGE_REQUIRE(one_of(covers, cover), ErrorCode::InvalidArgument,
                fmt::format("unknown cover '{}'", cover));
  HODGE_REQUIRE(!id.empty(), ErrorCode::InvalidArgument, "experiment id is empty");
  HODGE_REQUIRE(!h.empty(), ErrorCode::InvalidArgument, "h ladder is empty");
  for (std::size_t i = 0; i < h.size(); i++)
  {
    HODGE_REQUIRE(h[i] > 0.0, ErrorCode::InvalidArgument, "h must be positive");
    HODGE_REQUIRE(i == 0 || h[i] < h[i - 1], ErrorCode::InvalidArgument,
                  "h ladder must be strictly decreasing");
  }
  HODGE_REQUIRE(tol > 0.0, ErrorCode::InvalidArgument, "tol must be positive");
  HODGE_REQUIRE(k >= 1 && max_iterations >= 1, ErrorCode::InvalidArgument,
                "k and max_iterations must be positive");
  HODGE_REQUIRE(n == 2 || n == 3, ErrorCode::InvalidArgument, "n must be 2 or 3");
  HODGE_REQUIRE(degree >= 1 && degree <= n, ErrorCode::InvalidArgument,
                "degree must lie in 1..n");
  HODGE_REQUIRE(workers >= 0, ErrorCode::InvalidArgument, "workers must be non-negative");
  if (family == "dumbbell" || family == "aeps" || family == "multi_hole")
  {
    HODGE_REQUIRE(!eps.empty(), ErrorCode::InvalidArgument,
                  fmt::format("family {} needs an eps grid", family));
  }
  if (family == "multi_hole")
  {
    HODGE_REQUIRE(!holes.empty(), ErrorCode::InvalidArgument, "multi_hole needs a holes grid");
  }
  if (!slope_x.empty())
  {
    HODGE_REQUIRE(slope_x == "eps" || slope_x == "rc" || slope_x == "radius" || slope_x == "holes",
                  ErrorCode::InvalidArgument, fmt::format("unknown slope axis '{}'", slope_x));
  }
}

}  // namespace hodge
