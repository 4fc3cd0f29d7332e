// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance                  all ten
//   acceptance --criterion N    only N
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

#include "validate.hpp"

int main(int argc, char** argv) {
    bihardy::validate::Options opt;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) {
            opt.filter = std::string("criterion-") + argv[++i];
        } else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) {
            opt.seed = std::strtoull(argv[++i], nullptr, 10);
        } else {
            std::cerr << "usage: acceptance [--criterion N] [--seed S]\n";
            return 2;
        }
    }
    int ran = 0, failed = 0;
    for (const auto& c : bihardy::validate::criteria()) {
        if (!bihardy::validate::matches(c, opt.filter)) continue;
        const auto r = bihardy::validate::run_one(c, opt);
        std::cout << bihardy::validate::format_line(r) << std::endl;
        ++ran;
        failed += !r.passed;
    }
    if (ran == 0) {
        std::cerr << "no criterion matches '" << opt.filter << "'\n";
        return 2;
    }
    return failed ? 1 : 0;
}
