from hypothesis import settings

# single-CPU sandbox timings are noisy; correctness, not speed, is tested here
settings.register_profile("cellkit", deadline=None)
settings.load_profile("cellkit")


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            lines += [v for k, v in getattr(rep, "user_properties", []) if k == "acceptance"]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
