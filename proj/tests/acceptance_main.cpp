#include <cstdio>

#include "ctrlk/acceptance.hpp"

int main() {
    bool ok = true;
    for (const auto& r : ctrlk::run_acceptance()) {
        std::printf("criterion %d (%s): %s — %s (%.2fs)\n", r.index, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.detail.c_str(), r.seconds);
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}
