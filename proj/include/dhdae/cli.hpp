#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dhdae/linalg.hpp"

namespace dhdae::cli {

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::string command;  // analyze | reduce | simulate | models | validate
    std::string model;
    std::vector<std::string> params;
    std::string file;
    std::string s_list;
    std::string method;  // schur | subspace (reduce)
    double tau = 1e-3;
    double t_end = 1.0;
    long grid = 32;      // N for ph1d files
    std::string out;
    std::string energy_out;
    std::string format = "csv";  // simulate output
};

// Exit codes: 0 success, 1 singular or failed verdict, 2 usage or input error.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

// "1,1+1i,10" -> sample points
std::vector<Complex> parse_samples(const std::string& text);

}  // namespace dhdae::cli
