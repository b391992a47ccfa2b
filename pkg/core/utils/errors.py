from typing import Optional


class WorkbenchError(ValueError):
    """
    Erreur de base de SegalBench.

    Toutes les erreurs de la bibliothèque dérivent de ``ValueError`` afin que
    le code appelant puisse les traiter comme des entrées invalides.
    """


class ParameterError(WorkbenchError):
    """Paramètre hors de sa plage autorisée (ex: ``horn(2, 5)``)."""


class BoundsError(WorkbenchError):
    """Bidegré ou indice en dehors des bornes calculées d'une vue."""


class UnsupportedInputError(WorkbenchError):
    """Entrée valide mais hors du domaine traité exactement."""


class ValidationError(WorkbenchError):
    """Structure incohérente (table non associative, foncteur invalide...)."""


class DSLSyntaxError(WorkbenchError):
    """
    Erreur lexicale ou syntaxique dans un fichier d'atelier.
    """

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"ligne {line}, colonne {column}: {message}")
        self.line = line
        self.column = column


class DSLSemanticError(WorkbenchError):
    """
    Erreur sémantique (nom inconnu, mauvaise arité, marquage invalide).
    """

    def __init__(self, message: str, line: int, token: Optional[str] = None):
        where = f"ligne {line}"
        if token:
            where += f", près de '{token}'"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.token = token
