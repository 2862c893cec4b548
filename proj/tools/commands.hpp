#ifndef EMBALIGN_TOOLS_COMMANDS_HPP
#define EMBALIGN_TOOLS_COMMANDS_HPP

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <string>

#include "embalign/embedding.hpp"
#include "embalign/text.hpp"

namespace embalign::cli {

// Exit codes shared by all subcommands.
inline constexpr int kOk = 0;
inline constexpr int kOtherError = 1;
inline constexpr int kInputMissing = 2;
inline constexpr int kDegenerateAnchors = 3;
inline constexpr int kEvaluationImpossible = 4;

std::ifstream open_input(const std::string& path);
std::ofstream open_output(const std::string& path);

// Loads a .vec file, optionally truncating to the top-n most frequent rows
// and normalizing (center-then-l2).
EmbeddingSpace load_space(const std::string& path, std::int64_t top_n, bool do_normalize,
                          bool center, const std::string& lang_tag);

WordSet load_word_set(const std::string& path, bool lowercase_words);

void register_synth(CLI::App& app);
void register_induce(CLI::App& app);
void register_align(CLI::App& app);
void register_evaluate(CLI::App& app);
void register_split(CLI::App& app);

}  // namespace embalign::cli

#endif  // EMBALIGN_TOOLS_COMMANDS_HPP
