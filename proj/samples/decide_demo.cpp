// Decides a few systems given on the command line and prints the verdicts.
//
//   decide_demo "z1*z2; -z1*z2"   ->  entire, with the theta terms
//   decide_demo "z2; z1"          ->  not entire at level 2

#include <iostream>
#include <string>
#include <vector>

#include "entire/entire.hpp"

int main(int argc, char** argv) {
  using namespace entire;
  if (argc < 2) {
    std::cerr << "usage: decide_demo \"p1; p2; ...\" ...\n";
    return 1;
  }
  for (int arg = 1; arg < argc; ++arg) {
    std::vector<std::string> parts;
    std::string text = argv[arg], cur;
    for (char c : text) {
      if (c == ';') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);

    std::vector<LaurentPoly> rhs;
    for (const auto& p : parts) rhs.push_back(parse_laurent(p, parts.size()));
    OdeSystem sys(rhs);
    Verdict v = decide(sys);
    std::cout << text << "\n";
    if (auto* e = std::get_if<Entire>(&v)) {
      std::cout << "  entire; u0 =";
      for (const auto& x : e->certificate.u0) std::cout << " " << x;
      std::cout << "\n";
      for (const auto& [k, theta] : e->certificate.theta) std::cout << "  theta_" << k << " = " << to_string(theta) << "\n";
    } else {
      const auto& w = std::get<NotEntire>(v).witness;
      std::cout << "  not entire; full-rank support at level " << w.failing_level << " after " << w.chain.size()
                << " reduction step(s)\n";
    }
  }
  return 0;
}
