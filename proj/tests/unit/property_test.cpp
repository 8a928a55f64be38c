#include <specon/config.hpp>
#include <specon/report.hpp>
#include <specon/simulation.hpp>

#include "support/drivers.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace specon;
using testing_support::random_scenario;

namespace {

constexpr std::uint64_t kSeeds = 40;

bool legal_step(Category from, Category to) {
    if (to == Category::Progressing) {
        return true;
    }
    return (from == Category::Progressing && to == Category::Watching) ||
           (from == Category::Watching && to == Category::Converged);
}

}  // namespace

TEST(Properties, StructuralInvariantsAtEveryEvent) {
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        auto cfg = random_scenario(seed);
        Simulation sim(to_setup(cfg));
        std::map<ContainerId, bool> migrated;
        std::map<ContainerId, bool> rebalanced;
        double last = 0.0;
        while (sim.step()) {
            const auto& cl = sim.cluster();
            auto broken = cl.check_invariants();
            ASSERT_FALSE(broken) << "seed " << seed << ": " << *broken;
            ASSERT_GE(cl.now, last);
            last = cl.now;
            for (const auto& [id, c] : cl.containers()) {
                ASSERT_LE(c.allocated_cores, c.cpu_demand + 1e-12);
                ASSERT_LE(iteration_rate(c), c.base_iter_rate * (1.0 + 1e-12));
                ASSERT_FALSE(migrated[id] && !c.migrated) << "migrated flag reverted";
                ASSERT_FALSE(rebalanced[id] && !c.rebalanced) << "rebalanced flag reverted";
                migrated[id] = c.migrated;
                rebalanced[id] = c.rebalanced;
            }
            for (const auto& [wid, w] : cl.workers()) {
                ASSERT_LE(cl.resource_consumption(wid), 1.0 - w.reserved_fraction + 1e-12);
            }
        }
        ASSERT_TRUE(sim.finished());
    }
}

TEST(Properties, CategoryTransitionsAndMigratedSilence) {
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        auto rec = Simulation(to_setup(random_scenario(seed))).run();
        std::map<ContainerId, double> decided;
        for (const auto& d : rec.decisions) {
            ASSERT_FALSE(decided.contains(d.container)) << "decided twice";
            decided[d.container] = d.time;
        }
        for (const auto& ch : rec.category_changes) {
            ASSERT_TRUE(legal_step(ch.from, ch.to))
                << "seed " << seed << " c" << ch.container.value << " " << to_string(ch.from)
                << "->" << to_string(ch.to);
            auto it = decided.find(ch.container);
            ASSERT_TRUE(it == decided.end() || ch.time <= it->second)
                << "category change after migration decision";
        }
    }
}

TEST(Properties, DecisionsTargetConvergedContainers) {
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        auto cfg = random_scenario(seed);
        Simulation sim(to_setup(cfg));
        std::size_t seen = 0;
        while (sim.step()) {
            const auto& decisions = sim.record().decisions;
            for (; seen < decisions.size(); ++seen) {
                const auto& d = decisions[seen];
                const auto& c = sim.cluster().container(d.container);
                ASSERT_EQ(c.category, Category::Converged);
                ASSERT_TRUE(c.migrated);
                ASSERT_EQ(c.converged_at, d.time);
                if (!d.placement.stay) {
                    ASSERT_EQ(c.host, d.placement.target);
                }
            }
        }
    }
}

TEST(Properties, ConservationAndPauses) {
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        auto rec = Simulation(to_setup(random_scenario(seed))).run();
        for (const auto& c : rec.containers) {
            ASSERT_TRUE(c.completed());
            ASSERT_NEAR(c.completed_iterations, static_cast<double>(c.total_iterations), 1e-9);
        }
        for (const auto& m : rec.migrations) {
            ASSERT_TRUE(m.finished);
            ASSERT_EQ(m.progress_at_start, m.progress_at_end);
            ASSERT_GE(m.end - m.start, 0.5);
            ASSERT_LE(m.end - m.start, 5.0);
        }
    }
}

TEST(Properties, TimelineCountsMatchActiveContainers) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto rec = Simulation(to_setup(random_scenario(seed))).run();
        const auto& any = rec.timelines.begin()->second;
        for (std::size_t i = 0; i < any.size(); ++i) {
            double t = any[i].time;
            std::size_t sum = 0;
            for (const auto& [w, samples] : rec.timelines) {
                sum += samples[i].containers;
            }
            std::size_t active = 0;
            for (const auto& c : rec.containers) {
                // A sample reflects every event up to and including t.
                active += (c.submitted_at <= t && *c.completed_at > t) ? 1 : 0;
            }
            ASSERT_EQ(sum, active) << "seed " << seed << " t=" << t;
        }
    }
}

TEST(Properties, DeterministicLogs) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto cfg = random_scenario(seed);
        auto a = Simulation(to_setup(cfg)).run();
        auto b = Simulation(to_setup(cfg)).run();
        ASSERT_EQ(a.log.to_text(), b.log.to_text());
    }
}

TEST(Properties, DsKeepsInitialPlacement) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto cfg = random_scenario(seed);
        cfg.policy = Policy::DS;
        auto rec = Simulation(to_setup(cfg)).run();
        EXPECT_EQ(rec.log.count(EventKind::MigrationStart), 0u);
        for (const auto& c : rec.containers) {
            EXPECT_EQ(c.host, initial_worker(c.id.value, cfg.cluster.workers));
        }
    }
}

TEST(Properties, WeightScalingLeavesRunsUnchanged) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto cfg = random_scenario(seed);
        auto scaled = cfg;
        scaled.scheduler = {cfg.scheduler.w_pc * 4.0, cfg.scheduler.w_wc * 4.0,
                            cfg.scheduler.w_cc * 4.0};
        auto a = Simulation(to_setup(cfg)).run();
        auto b = Simulation(to_setup(scaled)).run();
        ASSERT_EQ(a.log.to_text(), b.log.to_text());
    }
}

TEST(Properties, CategorizationMatchesOracle) {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        auto out = testing_support::run_categorize_case(testing_support::make_categorize_case(seed));
        ASSERT_TRUE(out.ok) << "seed " << seed << ": " << out.why;
    }
}

TEST(Properties, PlacementMatchesOracle) {
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        auto out = testing_support::run_placement_case(seed);
        ASSERT_TRUE(out.ok) << "seed " << seed << ": " << out.why;
    }
}

TEST(Properties, RebalanceMatchesLogReplay) {
    std::size_t directives = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto out = testing_support::run_rebalance_case(seed);
        ASSERT_TRUE(out.ok) << "seed " << seed << ": " << out.why;
        directives += out.directives;
    }
    EXPECT_GT(directives, 0u);
}

TEST(Properties, InboundMigrationCountsOnDestination) {
    // Two workers, one job each; move c0 to w1 and watch the checkpoint window.
    SimulationSetup s;
    s.cluster.workers = 2;
    s.policy = Policy::DS;
    s.schedule = make_schedule({ScheduleKind::Fixed, 0.0, 0.0}, 2, ProfileRule::parse("single:vae"), 1);
    Simulation sim(s);
    while (sim.cluster().now < 50.0 && sim.step()) {
    }
    sim.schedule_migration(ContainerId{0}, WorkerId{1}, false);
    const double frozen = sim.cluster().container(ContainerId{0}).completed_iterations;
    EXPECT_TRUE(sim.cluster().container(ContainerId{0}).in_transit);
    EXPECT_EQ(sim.cluster().active_count(WorkerId{1}), 2u);
    EXPECT_EQ(sim.cluster().active_count(WorkerId{0}), 0u);
    while (sim.cluster().container(ContainerId{0}).in_transit && sim.step()) {
        EXPECT_EQ(sim.cluster().container(ContainerId{0}).completed_iterations, frozen);
    }
    EXPECT_EQ(sim.record().migrations.at(0).progress_at_end, frozen);
    EXPECT_EQ(sim.cluster().active_count(WorkerId{1}), 2u);
}
