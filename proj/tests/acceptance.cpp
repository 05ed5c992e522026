#include "qpwh/parallel.hpp"
#include "qpwh/verify.hpp"

#include <cstdio>

int main()
{
    auto results = qpwh::run_suite(qpwh::Suite::all, qpwh::worker_count_from_env());
    int failed = 0;
    for (const auto& r : results) {
        std::printf("%s\n", qpwh::format_line(r).c_str());
        failed += !r.pass;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
    return failed == 0 ? 0 : 1;
}
