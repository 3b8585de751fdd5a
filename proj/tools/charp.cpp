#include <fstream>
#include <iostream>

#include "charp/cli.hpp"

using namespace charp::cli;

int main(int argc, char** argv)
{
    Command cmd;
    std::string batch;
    CLI::App app{"charp: exact algebra over F_p(x1..xn), differential forms, symbols and symbol algebras"};
    detail::build_app(app, cmd, &batch);
    app.footer("Verbs and actions:\n"
               "  ff      normalize | gcd | valuation | random\n"
               "  pb      independent | complete | decompose | ppower | sab\n"
               "  forms   d | cartier | boundary | nu-test | dlog-solve\n"
               "  milnor  decompose | dlog | random\n"
               "  alg     symbol | nrd | split | hensel | dn\n"
               "  kato    rho0 | rho1 | present | oddlow | division\n"
               "Exit status: 0 ok, 1 error, 2 unknown.");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        Report r;
        r.command = "";
        r.status = Status::Error;
        r.error_name = "SyntaxError";
        r.error_message = std::string("SyntaxError: ") + e.what();
        std::cout << emit_report(r, cmd.flags.json ? Format::Json : Format::Text);
        return 1;
    }

    if (!batch.empty()) {
        std::ifstream in(batch);
        if (!in) {
            std::cerr << "cannot open batch file " << batch << '\n';
            return 1;
        }
        return run_batch(in, std::cout, cmd.flags);
    }

    Report r = run_command(cmd);
    std::cout << emit_report(r, cmd.flags.json ? Format::Json : Format::Text);
    return exit_code(r.status);
}
