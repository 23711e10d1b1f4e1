#include "powervp/platform.hpp"

#include "powervp/errors.hpp"

namespace powervp {

std::unique_ptr<Platform> build_platform(const SystemConfig& config,
                                         std::optional<std::vector<std::uint32_t>> program) {
    if (auto problems = validate(config); !problems.empty()) throw ValidationError(std::move(problems));

    auto p = std::make_unique<Platform>(config);
    p->net = std::make_unique<PowerNet>(config.power.net_spec());

    switch (config.core.kind) {
        case CoreKind::None:
            break;
        case CoreKind::Phase:
            p->core = std::make_unique<PhaseCore>(config.core.phase);
            break;
        case CoreKind::Constant:
            p->core = std::make_unique<ConstantLoad>(config.core.constant_power_w);
            break;
        case CoreKind::Iss: {
            if (!program) program = load_program_image(config.resolved_program_path());
            p->core = std::make_unique<Iss>(config.core.iss, *program);
            break;
        }
    }
    if (config.mic.enabled) p->mic = std::make_unique<Microphone>(config.mic.mic);

    Iss* iss = p->iss();
    for (const auto& region : config.bus.regions) {
        if (region.id == "mic") {
            if (!p->mic) continue;
            Microphone* mic = p->mic.get();
            CoreModel* core = p->core.get();
            p->bus.register_peripheral(region.id, region.base, region.size, [mic, core](const BusRequest& req) {
                return mic->handle(req, core ? core->now() : SimTime{});
            });
        } else if (region.id == "pwrctl") {
            if (!iss) continue;
            p->bus.register_peripheral(region.id, region.base, region.size, make_power_controller(*iss));
        }
    }
    if (iss) {
        const FuncBus* bus = &p->bus;
        iss->set_bus_port([bus](const BusRequest& req) { return bus->route(req); });
    }

    if (p->core) p->core_load = p->net->add_load("core", config.core.rail);
    if (p->mic) p->mic_load = p->net->add_load("mic", config.mic.rail);
    return p;
}

}  // namespace powervp
