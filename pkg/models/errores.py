class DomainError(ValueError):
    """Argumento fuera del dominio de la operación"""


class ValidationError(DomainError):
    """Datos gaussianos no físicos; el mensaje nombra el invariante violado"""


class ResourceError(RuntimeError):
    """Se superó un límite de generación o de evaluación"""


class NumericalConsistencyError(ArithmeticError):
    """Residuo imaginario o verificación cruzada fuera de tolerancia"""
