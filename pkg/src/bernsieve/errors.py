class VerificationError(Exception):
    """A computed object failed a check that the underlying mathematics guarantees.

    ``check`` names the identity or lemma that was violated; ``detail`` carries
    whatever structured evidence the caller collected (offending vertex,
    instance, d value, ...).
    """

    def __init__(self, check, message, detail=None):
        super().__init__(f"{check}: {message}")
        self.check = check
        self.detail = detail
