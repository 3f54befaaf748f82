#include "cbap/batch.hpp"
#include "cbap/experiments.hpp"

#include <doctest.h>

#include <atomic>
#include <stdexcept>

using namespace cbap;

TEST_CASE("serial and parallel batches are identical")
{
    const MacParams mac;
    const SlotDurations slots = slot_durations(TimingParams{});
    std::vector<SimJob> jobs;
    for (int i = 0; i < 24; ++i)
        jobs.push_back({1 + i % 9, 100u + static_cast<std::uint64_t>(i), SlotBudget{20000}});
    jobs.push_back({4, 7, SuccessTarget{50}});
    jobs.push_back({4, 7, MemberRequests{2}});

    const auto serial = simulate_batch(jobs, mac, slots, {}, Execution::serial);
    const auto parallel = simulate_batch(jobs, mac, slots, {}, Execution::parallel);
    CHECK(serial == parallel);
    for (std::size_t i = 0; i < jobs.size(); ++i)
        CHECK(serial[i] == simulate_sector(jobs[i].n, mac, slots, jobs[i].stop, jobs[i].seed));
}

TEST_CASE("for_each_index")
{
    for (auto exec : {Execution::serial, Execution::parallel}) {
        std::vector<int> hit(1000, 0);
        for_each_index(hit.size(), exec, [&](std::size_t i) { hit[i] += static_cast<int>(i); });
        for (std::size_t i = 0; i < hit.size(); ++i)
            CHECK(hit[i] == static_cast<int>(i));

        CHECK_THROWS_AS(for_each_index(50, exec,
                                       [](std::size_t i) {
                                           if (i == 17)
                                               throw std::runtime_error("boom");
                                       }),
                        std::runtime_error);
        for_each_index(0, exec, [](std::size_t) { FAIL("no work expected"); });
    }
}

TEST_CASE("comparison runs are independent of execution mode")
{
    ExperimentConfig cfg = table1_config();
    cfg.n_values = {5, 20};
    cfg.seeds = {3, 1, 2};
    const auto a = run_comparison(cfg, Execution::serial);
    const auto b = run_comparison(cfg, Execution::parallel);
    REQUIRE(a.rows.size() == 6);
    CHECK(a.rows == b.rows);
    CHECK(a.rows[0].n == 5);
    CHECK(a.rows[0].seed == 1);
    CHECK(a.rows[5].n == 20);
    CHECK(a.rows[5].seed == 3);
}
