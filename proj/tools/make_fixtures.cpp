#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "planaria/fixtures.hpp"

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << content;
}

} // namespace

int main(int argc, char** argv) {
    try {
        const std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
        std::filesystem::create_directories(dir);
        const planaria::fixtures::Bundle bundle = planaria::fixtures::generate();
        write_file(dir / "fixtures.quad", planaria::fixtures::bundle_text(bundle));
        write_file(dir / "fig3.cert", bundle.certificate);
        std::cout << "wrote " << (dir / "fixtures.quad").string() << "\n";
        std::cout << "wrote " << (dir / "fig3.cert").string() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "make_fixtures: " << e.what() << "\n";
        return 1;
    }
}
