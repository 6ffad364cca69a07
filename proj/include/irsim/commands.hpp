#pragma once

#include <irsim/config.hpp>
#include <irsim/network.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace irsim {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  int workers = 1;
  bool dbm = false;  // report powers in dBm instead of dBW
};

struct CoverageRequest {
  bool multi_cell = false;
  std::vector<std::string> heights{"ground"};  // ground | aerial
  std::vector<std::string> schemes;            // empty: use the config list
};

double height_for(const Config& cfg, const std::string& regime);

// Each command writes its files into opt.out_dir and returns their paths.
std::vector<std::filesystem::path> cmd_link_cdf(const Config& cfg, const RunOptions& opt);
std::vector<std::filesystem::path> cmd_coverage(const Config& cfg, const RunOptions& opt, const CoverageRequest& req);
std::vector<std::filesystem::path> cmd_bounds(const Config& cfg, const RunOptions& opt,
                                              const std::vector<std::string>& heights);

}  // namespace irsim
