#include <exception>
#include <iostream>

#include "commands.hpp"
#include "config.hpp"
#include "pseudospec/errors.hpp"

int main(int argc, char** argv) {
    using namespace pseudospec;
    using namespace pseudospec::cli;
    try {
        const auto cfg = parse_command_line(argc, argv);
        if (!cfg) return kOk;
        validate(*cfg);
        return run(*cfg);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << '\n';
        return kConvergence;
    } catch (const PropertyViolation& e) {
        std::cerr << "property violation: " << e.what() << '\n';
        return kPropertyViolation;
    } catch (const InsufficientData& e) {
        std::cerr << "fit refused: " << e.what() << '\n';
        return kFitRefused;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    }
}
