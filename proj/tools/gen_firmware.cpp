// Regenerates the shipped ISS firmware images.
#include <filesystem>
#include <iostream>

#include "powervp/firmware.hpp"
#include "powervp/iss.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_firmware OUTPUT_DIR\n";
        return 1;
    }
    const std::filesystem::path dir = argv[1];
    try {
        std::filesystem::create_directories(dir);
        for (std::uint32_t taps : {40u, 20u}) {
            powervp::FirFirmwareParams p;
            p.taps = taps;
            const auto path = dir / ("fir" + std::to_string(taps) + ".bin");
            powervp::write_program_image(path.string(), powervp::fir_firmware(p));
            std::cout << path.string() << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
