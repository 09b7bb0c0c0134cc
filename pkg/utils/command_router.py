"""
@file: utils/command_router.py
@description: Роутеры команд CLI: регистрация обработчиков декоратором и сборка argparse
@dependencies: argparse, dataclasses, typing, services.generator, services.quadrature, utils.output_writer
@created: 2025-02-13
"""

import argparse
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from services.generator import Generator
from services.quadrature import QuadratureConfig
from utils.constants import MC_RNG_ALGORITHM
from utils.output_writer import Row, RunManifest, output_writer

ArgumentsSetup = Callable[[argparse.ArgumentParser], None]


@dataclass
class CommandContext:
    """
    Все, что нужно обработчику команды

    Attributes:
        command: Имя команды
        args: Разобранные аргументы
        generator: Выбранный генератор
        quadrature: Настройки квадратуры с учетом --tolerance
        fmt: Формат вывода
        out: Путь файла результата (None - stdout)
        seed: Зерно Монте-Карло
    """

    command: str
    args: argparse.Namespace
    generator: Generator
    quadrature: QuadratureConfig
    fmt: str
    out: Optional[str]
    seed: int

    def manifest(self, parameters: Dict[str, Any], sampling: bool = False,
                 quadrature: bool = True) -> RunManifest:
        """Манифест запуска для таблицы этой команды"""
        return RunManifest(
            command=self.command,
            generator_name=self.generator.name,
            quadrature=self.quadrature if quadrature else None,
            seed=self.seed if sampling else None,
            rng_algorithm=MC_RNG_ALGORITHM if sampling else None,
            parameters=parameters,
        )

    def emit(self, columns: Sequence[str], rows: List[Row], manifest: RunManifest) -> None:
        output_writer.emit(columns, rows, manifest, fmt=self.fmt, out=self.out)


Handler = Callable[[CommandContext], int]


@dataclass
class CommandSpec:
    name: str
    handler: Handler
    help: str = ""
    arguments: Optional[ArgumentsSetup] = None


@dataclass
class Router:
    """Набор команд одного модуля обработчиков"""

    name: str = "router"
    commands: Dict[str, CommandSpec] = field(default_factory=dict)

    def command(self, name: str, help: str = "",
                arguments: Optional[ArgumentsSetup] = None) -> Callable[[Handler], Handler]:
        """Декоратор регистрации обработчика команды"""

        def decorator(handler: Handler) -> Handler:
            if name in self.commands:
                raise ValueError(f"Команда {name} уже зарегистрирована в {self.name}")
            self.commands[name] = CommandSpec(name=name, handler=handler, help=help, arguments=arguments)
            return handler

        return decorator


class Dispatcher:
    """Объединяет роутеры и строит парсер с подкомандами"""

    def __init__(self):
        self.routers: List[Router] = []
        self.commands: Dict[str, CommandSpec] = {}

    def include_router(self, router: Router) -> None:
        for name, command in router.commands.items():
            if name in self.commands:
                raise ValueError(f"Команда {name} зарегистрирована дважды")
            self.commands[name] = command
        self.routers.append(router)

    def build_parser(self, prog: str, description: str,
                     common: argparse.ArgumentParser) -> argparse.ArgumentParser:
        """Парсер с подкомандой на каждую зарегистрированную команду"""
        parser = argparse.ArgumentParser(prog=prog, description=description)
        subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
        subparsers.required = True
        for command in self.commands.values():
            sub = subparsers.add_parser(command.name, help=command.help, description=command.help,
                                        parents=[common])
            if command.arguments:
                command.arguments(sub)
        return parser

    def dispatch(self, ctx: CommandContext) -> int:
        return self.commands[ctx.command].handler(ctx)
