// Prints lower and upper slope bounds for the built-in plants, or for plant
// files given on the command line.

#include <cstdio>
#include <vector>

#include "zflim/zflim.hpp"

int main(int argc, char** argv) {
  using namespace zflim;
  std::vector<Plant> plants;
  if (argc > 1) {
    for (int i = 1; i < argc; ++i) plants.push_back(load_plant(argv[i]));
  } else {
    plants.assign(builtin_plants().begin(), builtin_plants().end());
  }

  std::printf("%-8s %-9s %10s %10s %10s %10s %8s\n", "plant", "class", "k_N", "lower", "upper", "upper_lp",
              "gap_%");
  for (const auto& p : plants) {
    for (auto cls : {MultiplierClass::monotone, MultiplierClass::odd}) {
      try {
        const auto r = analyze(p, cls);
        std::printf("%-8s %-9s %10.5f %10.5f %10.5f %10.5f %8.4f\n", p.name.c_str(),
                    std::string(to_string(cls)).c_str(), r.k_nyquist, r.k_lower, r.k_upper_single, r.k_upper_lp,
                    r.dual_gap_percent);
        if (r.failure) std::printf("  %s\n", r.failure->what());
      } catch (const Error& e) {
        std::printf("%-8s %-9s %s\n", p.name.c_str(), std::string(to_string(cls)).c_str(), e.what());
      }
    }
  }
}
