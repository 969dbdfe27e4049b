#pragma once

#include <filesystem>
#include <vector>

#include "seasoncast/data_io.hpp"
#include "seasoncast/preproc.hpp"
#include "seasoncast/trainer.hpp"

namespace seasoncast {

// Everything the train/sweep pipeline needs, with the CLI defaults.
// Config file keys mirror the CLI flag names; flags win on conflict.
struct PipelineConfig {
    TrainerConfig trainer;
    ScalerConfig scaler;
    SeasonConfig seasons;
    std::size_t window = 4;
    std::size_t train_targets = 14;
    std::vector<std::size_t> hidden_sizes = {8, 4};
    NetworkKind kind = NetworkKind::mlp;
};

// Key-value text file, one `key = value` per line, `#` comments.
// Recognized keys: kind, hidden, lr, mc, epochs, goal_mse, seed, factor,
// window, train_targets, seasons, membership (12 comma-separated reals).
// Unknown keys and malformed values fail with the line number.
PipelineConfig load_config(const std::filesystem::path& path,
                           PipelineConfig base = PipelineConfig{});

// Parsers shared with the CLI flag handling.
std::vector<std::size_t> parse_hidden_sizes(const std::string& text);
MembershipTable parse_membership_table(const std::string& text);
NetworkKind parse_kind(const std::string& text);

}  // namespace seasoncast
