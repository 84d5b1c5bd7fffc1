#ifndef DISCRIMLAB_CLI_HPP
#define DISCRIMLAB_CLI_HPP

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "discrimlab/dataset.hpp"
#include "discrimlab/evaluate.hpp"

namespace discrimlab::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kUserError = 2 };

/// A classification method fitted on one dataset.
struct FittedMethod {
    std::string name;
    evaluate::Classifier classify;
    std::vector<std::string> details;  // human-readable fit summary lines
};

// fisher | ml-equal | ml-unequal | kernel | tree | index
FittedMethod fit_method(const std::string& name, const dataset::LabeledDataset& ds);

// Entry point shared by the binary and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace discrimlab::cli

#endif  // DISCRIMLAB_CLI_HPP
