from .main import main
from .report import Report, TaskReport, emit, parse_structured
from .runner import RunOptions, run
from .scenario import Scenario, parse_scenario
