// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.

#include "suites.hpp"

#include <cstdio>
#include <cstring>
#include <iostream>

using namespace angelesco::lab;

int main(int argc, char** argv)
{
    Options o;
    bool json = argc > 1 && std::strcmp(argv[1], "--json") == 0;
    using Fn = Verdict (*)(const Options&);
    const Fn all[] = {ac1_limits, ac2_endpoint, ac3_cross_backend, ac4_ray_limits, ac5_middle,
                      ac6_marginal, ac7_spectrum, ac8_mfun, ac9_appendix, ac10_mop};
    int failed = 0;
    for (Fn f : all) {
        Verdict v = f(o);
        std::printf("%s %s %s [%.1fs]\n", v.id.c_str(), v.pass ? "PASS" : "FAIL", v.summary.c_str(), v.seconds);
        std::fflush(stdout);
        if (json) std::cerr << verdict_json(v).dump() << '\n';
        failed += !v.pass;
    }
    std::printf("%d of 10 criteria passed\n", 10 - failed);
    return failed == 0 ? 0 : 1;
}
