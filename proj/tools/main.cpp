#include <exception>
#include <iostream>

#include "commands.hpp"
#include "embalign/errors.hpp"
#include "embalign/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"embalign: cross-lingual word embedding alignment toolkit"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "Cap worker threads (0 = hardware default)");

  embalign::cli::register_synth(app);
  embalign::cli::register_induce(app);
  embalign::cli::register_align(app);
  embalign::cli::register_evaluate(app);
  embalign::cli::register_split(app);

  try {
    app.parse(argc, argv);
    embalign::set_max_threads(threads);
    for (auto* sub : app.get_subcommands()) {
      // each subcommand stored its action as a callback; parse() already ran
      // option handling, the callback runs here so exceptions map to codes
      (void)sub;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);  // --help exits 0, bad usage nonzero
  } catch (const embalign::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return embalign::cli::kInputMissing;
  } catch (const embalign::DegenerateAnchorsError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return embalign::cli::kDegenerateAnchors;
  } catch (const embalign::EvaluationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return embalign::cli::kEvaluationImpossible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return embalign::cli::kOtherError;
  }
  return embalign::cli::kOk;
}
