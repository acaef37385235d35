#pragma once

#include "angelesco/curve.hpp"
#include "angelesco/mop.hpp"

#include "json.hpp"

#include <array>
#include <string>
#include <vector>

namespace angelesco::lab {

struct Options {
    Geometry geom = Geometry::reference();
    std::array<WeightSpec, 2> weights{WeightSpec::constant(), WeightSpec::constant()};
    unsigned bits = 512;
    std::vector<std::string> c;  // empty: suite default
    int depth = 10;
    int digits = 30;
};

struct Verdict {
    std::string id;
    bool pass = false;
    std::string summary;  // one line with the measured numbers
    nlohmann::ordered_json data;
    double seconds = 0;
    double budget = 0;  // seconds, 0 when unbounded
};

Verdict ac1_limits(const Options& o);
Verdict ac2_endpoint(const Options& o);
Verdict ac3_cross_backend(const Options& o);
Verdict ac4_ray_limits(const Options& o);
Verdict ac5_middle(const Options& o);
Verdict ac6_marginal(const Options& o);
Verdict ac7_spectrum(const Options& o);
Verdict ac8_mfun(const Options& o);
Verdict ac9_appendix(const Options& o);
Verdict ac10_mop(const Options& o);
Verdict equilibrium_masses(const Options& o);

// verify suites: limits | marginal | spectrum | mfun | equilibrium
std::vector<Verdict> verify(const std::string& suite, const Options& o);

nlohmann::ordered_json verdict_json(const Verdict& v);
std::string decimal(double x);

}  // namespace angelesco::lab
