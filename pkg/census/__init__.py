"""Field census: enumeration, records, verification and statistics"""
