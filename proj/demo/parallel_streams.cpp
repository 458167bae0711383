// Carving non-overlapping substreams out of one xorshift128+ sequence:
// each worker starts 2^64 steps after the previous one via the jump mask,
// so their outputs can never collide.

#include "xsk/engine.hpp"
#include "xsk/jump.hpp"

#include <cstdio>

int main() {
    const auto cfg = xsk::xorshift128plus_config();
    const auto cert = xsk::certify_full_period(cfg);
    const auto mask = xsk::jump_poly(cert, xsk::big_pow2(64));

    xsk::GeneratorState stream = xsk::seed_from_u64(2024, cfg);
    for (int worker = 0; worker < 4; ++worker) {
        std::printf("worker %d:", worker);
        xsk::GeneratorState local = stream;
        for (int i = 0; i < 4; ++i) std::printf(" %016llx",
            static_cast<unsigned long long>(xsk::next(local, cfg)));
        std::printf("\n");
        xsk::apply_jump(stream, mask, cfg);
    }
    return 0;
}
